#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "northcott/heights.hpp"

using namespace northcott;

namespace {

auto throws_code(ErrorCode c) {
  return Catch::Matchers::Predicate<Error>(
      [c](const Error& e) { return e.code() == c; });
}

bool quantity_equals(const Quantity& a, const Quantity& b) {
  return compare(a, b) == Cmp::Equal;
}

LogLinear ll_log(long p, const mpq_class& coeff = 1) {
  return LogLinear::log_of_prime(mpz_class(p), coeff);
}

RationalTuple rat(std::vector<mpq_class> v) { return RationalTuple{std::move(v)}; }

}  // namespace

TEST_CASE("weil heights of monomials match the exponent-vector formula") {
  REQUIRE(weil_height(RadicalMonomial::from_rational(mpq_class(5, 7))) == ll_log(7));
  REQUIRE(weil_height(RadicalMonomial::from_rational(mpq_class(3, 2))) == ll_log(3));
  REQUIRE(weil_height(RadicalMonomial::from_rational(1)).is_zero());
  REQUIRE(weil_height(RadicalMonomial::from_rational(-1)).is_zero());
  REQUIRE(weil_height(RadicalMonomial::root_of_unity(4, 1)).is_zero());
  REQUIRE(weil_height(RadicalMonomial::root_of_unity(8, 3)).is_zero());

  // (5/7)^(1/2): numerator and denominator contribute log 5 / 2 and log 7 / 2.
  REQUIRE(weil_height(make_radical(5, 7, 2)) == ll_log(7, mpq_class(1, 2)));
  // 2^(3/2) has no denominator part.
  REQUIRE(weil_height(RadicalMonomial::rational_power(2, mpq_class(3, 2))) ==
          ll_log(2, mpq_class(3, 2)));
  // Mixed support: the larger of the two one-sided sums wins.
  RadicalMonomial prod = make_radical(5, 7, 2) * make_radical(37, 41, 5);
  LogLinear expect = ll_log(7, mpq_class(1, 2)) + ll_log(41, mpq_class(1, 5));
  REQUIRE(weil_height(prod) == expect);
  // Root-of-unity factors never move the height.
  RadicalMonomial twisted = RadicalMonomial::root_of_unity(3, 1) * make_radical(5, 7, 2);
  REQUIRE(weil_height(twisted) == ll_log(7, mpq_class(1, 2)));
}

TEST_CASE("projective heights of rational tuples use the coprime representative") {
  REQUIRE(projective_height(rat({3, 4})) == ll_log(2, 2));
  REQUIRE(projective_height(rat({2, 4})) == ll_log(2));
  REQUIRE(projective_height(rat({0, 5})).is_zero());
  REQUIRE(projective_height(rat({-6, 8, 10})) == ll_log(5));
  // (1/2, 3) ~ (1, 6).
  REQUIRE(projective_height(rat({mpq_class(1, 2), 3})) == ll_log(2) + ll_log(3));
  REQUIRE(projective_height(rat({1})).is_zero());

  REQUIRE_THROWS_MATCHES(projective_height(rat({0, 0, 0})), Error,
                         throws_code(ErrorCode::InvalidTuple));
  REQUIRE_THROWS_MATCHES(projective_height(rat({})), Error,
                         throws_code(ErrorCode::InvalidTuple));

  // Variant dispatch sees through the wrapper.
  ProjectiveTuple t = rat({3, 4});
  REQUIRE(projective_height(t) == ll_log(2, 2));
}

TEST_CASE("projective heights of twisted radical tuples sum place by place") {
  RadicalMonomial beta = make_radical(5, 7, 2);

  // (1, b, b z, b z^2) with z a primitive cube root of unity.
  TwistedRadicalTuple t;
  t.beta = beta;
  t.zeta_order = 3;
  t.entries = {{1, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}};
  REQUIRE(projective_height(t) == ll_log(7, mpq_class(1, 2)));

  // (1, b z^j) has the same height as b for every twist exponent.
  for (unsigned long j = 0; j < 8; ++j) {
    TwistedRadicalTuple u;
    u.beta = beta;
    u.zeta_order = 8;
    u.entries = {{1, 0, 0}, {1, j, 1}};
    REQUIRE(projective_height(u) == weil_height(beta));
  }

  // (3, 2 b z^5): the finite part contributes log 7 / 2, the archimedean
  // maximum is log 3 because 2 b < 3.
  TwistedRadicalTuple v;
  v.beta = beta;
  v.zeta_order = 8;
  v.entries = {{3, 0, 0}, {2, 5, 1}};
  LogLinear hv = projective_height(v);
  REQUIRE(hv == ll_log(7, mpq_class(1, 2)) + ll_log(3));
  double want = 0.5 * std::log(7.0) + std::log(3.0);
  REQUIRE(std::abs(hv.eval(128).mid() - want) < 1e-12);

  // Scaling all entries by a rational leaves the height alone.
  TwistedRadicalTuple w1, w2;
  w1.beta = w2.beta = beta;
  w1.zeta_order = w2.zeta_order = 4;
  w1.entries = {{1, 0, 0}, {1, 1, 1}};
  w2.entries = {{mpq_class(3, 2), 0, 0}, {mpq_class(3, 2), 1, 1}};
  REQUIRE(projective_height(w1) == projective_height(w2));

  // Zero entries are ignored; an all-zero tuple is rejected.
  TwistedRadicalTuple z;
  z.beta = beta;
  z.zeta_order = 4;
  z.entries = {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}};
  TwistedRadicalTuple z2 = z;
  z2.entries.erase(z2.entries.begin());
  REQUIRE(projective_height(z) == projective_height(z2));

  TwistedRadicalTuple allzero;
  allzero.beta = beta;
  allzero.zeta_order = 2;
  allzero.entries = {{0, 0, 0}, {0, 1, 1}};
  REQUIRE_THROWS_MATCHES(projective_height(allzero), Error,
                         throws_code(ErrorCode::InvalidTuple));

  // The base must be a positive real radical and exponents 0/1.
  TwistedRadicalTuple bad;
  bad.beta = RadicalMonomial::from_rational(-2);
  bad.zeta_order = 2;
  bad.entries = {{1, 0, 0}, {1, 0, 1}};
  REQUIRE_THROWS_MATCHES(projective_height(bad), Error,
                         throws_code(ErrorCode::InvalidInput));
  TwistedRadicalTuple bad2;
  bad2.beta = beta;
  bad2.zeta_order = 2;
  bad2.entries = {{1, 0, 0}, {1, 0, 2}};
  REQUIRE_THROWS_MATCHES(projective_height(bad2), Error,
                         throws_code(ErrorCode::InvalidInput));

  // A rational base (the trivial radical) reduces to the rational picture.
  TwistedRadicalTuple triv;
  triv.beta = RadicalMonomial::one();
  triv.zeta_order = 2;
  triv.entries = {{1, 0, 0}, {1, 1, 1}};  // (1, -1)
  REQUIRE(projective_height(triv).is_zero());
}

TEST_CASE("the Euclidean-at-infinity height is exactly half a log of an integer") {
  REQUIRE(h2_height(rat({3, 4})) == ll_log(5));
  REQUIRE(h2_height(rat({6, 8})) == ll_log(5));
  REQUIRE(h2_height(rat({1, 0, 0})).is_zero());
  REQUIRE(h2_height(rat({1, 1})) == ll_log(2, mpq_class(1, 2)));
  REQUIRE(h2_height(rat({1, 2, 2})) == ll_log(3));
  // (1/2, 1/3) ~ (3, 2): h2 = log(13)/2.
  REQUIRE(h2_height(rat({mpq_class(1, 2), mpq_class(1, 3)})) ==
          ll_log(13, mpq_class(1, 2)));

  REQUIRE_THROWS_MATCHES(h2_height(rat({0, 0})), Error,
                         throws_code(ErrorCode::InvalidTuple));
  ProjectiveTuple twisted = TwistedRadicalTuple{
      make_radical(5, 7, 2), 2, {{1, 0, 0}, {1, 0, 1}}};
  REQUIRE_THROWS_MATCHES(h2_height(twisted), Error,
                         throws_code(ErrorCode::InvalidInput));

  // Float cross-check of the frozen value.
  REQUIRE(std::abs(h2_height(rat({3, 4})).eval(128).mid() - std::log(5.0)) < 1e-9);
}

TEST_CASE("the two tuple heights differ by at most half a log of the dimension") {
  std::mt19937_64 rng(20260823u);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> dim(2, 6);

  for (int iter = 0; iter < 300; ++iter) {
    int n = dim(rng);
    std::vector<mpq_class> entries;
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      if (q != 0) nonzero = true;
      entries.push_back(q);
    }
    if (!nonzero) entries[0] = 1;
    RationalTuple t{entries};
    LogLinear proj = projective_height(t);
    LogLinear h2 = h2_height(t);
    REQUIRE(ll_compare(h2, proj) != Cmp::Less);
    LogLinear gap = h2 - proj;
    LogLinear bound = LogLinear::log_of_rational(mpq_class(static_cast<long>(n)));
    bound *= mpq_class(1, 2);
    REQUIRE(ll_compare(gap, bound) != Cmp::Greater);
  }
}

TEST_CASE("weighted heights multiply the weight at the degree by the height") {
  RadicalMonomial beta = make_radical(5, 7, 2);

  Weight one = Weight::constant(1);
  REQUIRE(quantity_equals(weighted_height(beta, one),
                          Quantity::from_loglinear(ll_log(7, mpq_class(1, 2)))));

  Weight lin = Weight::power(1);
  REQUIRE(quantity_equals(weighted_height(beta, lin),
                          Quantity::from_loglinear(ll_log(7))));

  // Torsion points carry exact zero weighted height under every weight.
  RadicalMonomial zeta8 = RadicalMonomial::root_of_unity(8, 1);
  Quantity z = weighted_height(zeta8, Weight::dobrowolski());
  REQUIRE(z.is_exact());
  REQUIRE(quantity_equals(z, Quantity::from_rational(0)));

  // sqrt-degree weight: w(2) * log(7)/2 = log(7)/sqrt(2).
  Weight root = Weight::power(mpq_class(1, 2));
  Quantity q = weighted_height(beta, root);
  REQUIRE(q.sign_or_zero() > 0);
  double want = std::sqrt(2.0) * 0.5 * std::log(7.0);
  REQUIRE(std::abs(q.approx() - want) < 1e-9);
}

TEST_CASE("height identities hold exactly on random monomials and rationals") {
  std::mt19937_64 rng(20260823u);
  const std::vector<long> pool_a = {2, 3, 5, 7, 11, 13};
  const std::vector<long> pool_b = {17, 19, 23, 29, 31, 37};
  std::uniform_int_distribution<size_t> pick(0, pool_a.size() - 1);
  std::uniform_int_distribution<long> root_deg(1, 6);
  std::uniform_int_distribution<unsigned long> extra_root(1, 12);
  std::uniform_int_distribution<int> coin(0, 1);

  auto random_monomial = [&](const std::vector<long>& pool) {
    size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    RadicalMonomial m = make_radical(pool[i], pool[j], root_deg(rng));
    if (coin(rng)) {
      size_t k = pick(rng);
      while (k == i || k == j) k = pick(rng);
      m = m * make_radical(pool[k], 1, root_deg(rng));
    }
    return m;
  };

  SECTION("taking an n-th root divides the height by n") {
    for (int iter = 0; iter < 1000; ++iter) {
      RadicalMonomial a = random_monomial(pool_a);
      unsigned long n = extra_root(rng);
      LogLinear scaled = weil_height(a.nth_root(n));
      scaled *= mpq_class(static_cast<long>(n));
      REQUIRE(scaled == weil_height(a));
    }
  }

  SECTION("heights are subadditive under products with disjoint support") {
    for (int iter = 0; iter < 1000; ++iter) {
      RadicalMonomial a = random_monomial(pool_a);
      RadicalMonomial b = random_monomial(pool_b);
      if (coin(rng)) a = a.inverse();
      if (coin(rng)) b = b.inverse();
      LogLinear lhs = weil_height(a * b);
      LogLinear rhs = weil_height(a) + weil_height(b);
      REQUIRE(ll_compare(lhs, rhs) != Cmp::Greater);
    }
  }

  SECTION("the product formula on rationals has exactly zero residual") {
    std::uniform_int_distribution<long> nz(1, 5000);
    for (int iter = 0; iter < 500; ++iter) {
      mpq_class r(nz(rng), nz(rng));
      r.canonicalize();
      if (coin(rng)) r = -r;
      mpq_class a = r < 0 ? mpq_class(-r) : r;
      LogLinear residual = LogLinear::log_of_rational(a);
      for (const auto& [p, v] : heightdetail::rational_valuations(r)) {
        residual -= LogLinear::log_of_prime(p, v);
      }
      REQUIRE(residual.is_zero());
    }
  }

  SECTION("projective and Euclidean heights ignore rational rescaling") {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 7);
    for (int iter = 0; iter < 200; ++iter) {
      std::vector<mpq_class> entries;
      for (int i = 0; i < 3; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        entries.push_back(q);
      }
      if (entries[0] == 0 && entries[1] == 0 && entries[2] == 0) entries[1] = 2;
      mpq_class c(num(rng), den(rng));
      c.canonicalize();
      if (c == 0) c = mpq_class(3, 2);
      std::vector<mpq_class> scaled;
      for (const auto& e : entries) scaled.push_back(e * c);
      REQUIRE(projective_height(rat(entries)) == projective_height(rat(scaled)));
      REQUIRE(h2_height(rat(entries)) == h2_height(rat(scaled)));
    }
  }
}
