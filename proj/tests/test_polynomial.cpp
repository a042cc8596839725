#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "northcott/mpfr_interval.hpp"
#include "northcott/polynomial.hpp"

using namespace northcott;

namespace {

IntPolynomial poly(std::vector<long> ascending) {
  std::vector<mpz_class> c;
  c.reserve(ascending.size());
  for (long v : ascending) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

// Rigorous enclosure of the unique root of f in [lo, hi] (exact sign changes),
// then of its logarithm, via bisection with exact rational evaluation.
double log_of_bracketed_root(const IntPolynomial& f, mpq_class lo, mpq_class hi) {
  REQUIRE(f.eval_q(lo) * f.eval_q(hi) < 0);
  for (int i = 0; i < 200; ++i) {
    mpq_class mid = (lo + hi) / 2;
    mpq_class v = f.eval_q(mid);
    if (v == 0) {
      lo = hi = mid;
      break;
    }
    if (sgn(v) == sgn(f.eval_q(lo))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  MpfrInterval iv = iv_log(MpfrInterval::from_q(lo, 256));
  return iv.mid();
}

}  // namespace

TEST_CASE("mahler measure of quadratics with known closed forms") {
  // x^2 - x - 1: the golden ratio is the only root outside the unit circle.
  MahlerEstimate golden = mahler_measure(poly({-1, -1, 1}));
  REQUIRE(golden.upper - golden.lower <= 1e-9);
  double log_phi = log_of_bracketed_root(poly({-1, -1, 1}), mpq_class(3, 2), mpq_class(2));
  REQUIRE(golden.lower <= log_phi);
  REQUIRE(golden.upper >= log_phi);
  REQUIRE(std::abs(log_phi - 0.48121182505960347) < 1e-12);

  // 7x^2 - 5: both roots inside the unit circle, measure = |lead| = 7.
  MahlerEstimate seven = mahler_measure(poly({-5, 0, 7}));
  REQUIRE(seven.upper - seven.lower <= 1e-9);
  double log7 = iv_log(MpfrInterval::from_q(mpq_class(7), 256)).mid();
  REQUIRE(seven.lower <= log7);
  REQUIRE(seven.upper >= log7);

  // x - 2: measure 2.
  MahlerEstimate two = mahler_measure(poly({-2, 1}));
  double log2 = iv_log(MpfrInterval::from_q(mpq_class(2), 256)).mid();
  REQUIRE(two.lower <= log2);
  REQUIRE(two.upper >= log2);
  REQUIRE(two.upper - two.lower <= 1e-9);

  // Cyclotomic-like content: x^2 + x + 1 has measure 1 (log 0).
  MahlerEstimate unit = mahler_measure(poly({1, 1, 1}));
  REQUIRE(unit.lower <= 0.0);
  REQUIRE(unit.upper >= 0.0);
  REQUIRE(unit.upper - unit.lower <= 1e-9);
}

TEST_CASE("mahler measure of the degree-10 small-measure polynomial") {
  // x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1: exactly one root
  // outside the unit circle, so the measure equals that root.
  IntPolynomial f = poly({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  MahlerEstimate m = mahler_measure(f);
  REQUIRE(m.upper - m.lower <= 1e-9);
  double oracle = log_of_bracketed_root(f, mpq_class(117, 100), mpq_class(118, 100));
  REQUIRE(m.lower <= oracle);
  REQUIRE(m.upper >= oracle);
  REQUIRE(std::abs(oracle - 0.162357612) < 1e-9);
}

TEST_CASE("mahler measure respects multiplicities and scaling") {
  IntPolynomial golden = poly({-1, -1, 1});
  IntPolynomial sq = golden * golden;
  MahlerEstimate m1 = mahler_measure(golden);
  MahlerEstimate m2 = mahler_measure(sq);
  REQUIRE(m2.lower <= 2 * m1.upper);
  REQUIRE(m2.upper >= 2 * m1.lower);
  REQUIRE(m2.upper - m2.lower <= 1e-8);

  // M(c f) = |c| M(f)
  IntPolynomial scaled = poly({-3, -3, 3});
  MahlerEstimate m3 = mahler_measure(scaled);
  double log3 = iv_log(MpfrInterval::from_q(mpq_class(3), 256)).mid();
  REQUIRE(m3.lower <= m1.upper + log3);
  REQUIRE(m3.upper >= m1.lower + log3);

  // Constant polynomial.
  MahlerEstimate c = mahler_measure(poly({7}));
  double log7 = iv_log(MpfrInterval::from_q(mpq_class(7), 256)).mid();
  REQUIRE(c.lower <= log7);
  REQUIRE(c.upper >= log7);

  REQUIRE_THROWS_AS(mahler_measure(IntPolynomial()), Error);
}

TEST_CASE("factorization splits and certifies") {
  // x^4 - 4 = (x^2 - 2)(x^2 + 2)
  auto f1 = factor_over_q(poly({-4, 0, 0, 0, 1}));
  REQUIRE(f1.size() == 2);
  REQUIRE(f1[0].first == poly({-2, 0, 1}));
  REQUIRE(f1[1].first == poly({2, 0, 1}));

  // x^6 - 8 = (x^2 - 2)(x^4 + 2x^2 + 4)
  auto f2 = factor_over_q(poly({-8, 0, 0, 0, 0, 0, 1}));
  REQUIRE(f2.size() == 2);
  REQUIRE(f2[0].first == poly({-2, 0, 1}));
  REQUIRE(f2[1].first == poly({4, 0, 2, 0, 1}));

  // Multiplicities: (2x+3)^2 (x^2 - 2)
  IntPolynomial g = poly({3, 2}) * poly({3, 2}) * poly({-2, 0, 1});
  auto f3 = factor_over_q(g);
  REQUIRE(f3.size() == 2);
  bool saw_linear = false, saw_quad = false;
  for (const auto& [p, mult] : f3) {
    if (p == poly({3, 2})) {
      saw_linear = true;
      REQUIRE(mult == 2);
    }
    if (p == poly({-2, 0, 1})) {
      saw_quad = true;
      REQUIRE(mult == 1);
    }
  }
  REQUIRE(saw_linear);
  REQUIRE(saw_quad);

  REQUIRE(is_irreducible_over_q(poly({1, 0, 0, 0, 1})));      // x^4 + 1
  REQUIRE(is_irreducible_over_q(poly({1, 0, -1, 0, 1})));     // x^4 - x^2 + 1
  REQUIRE(is_irreducible_over_q(poly({-5, 0, 7})));           // 7x^2 - 5
  REQUIRE_FALSE(is_irreducible_over_q(poly({-1, 0, 1})));     // (x-1)(x+1)
  REQUIRE_FALSE(is_irreducible_over_q(poly({0, 1, 1})));      // x(x+1)
  REQUIRE_FALSE(is_irreducible_over_q(poly({2})));            // constants excluded
}

TEST_CASE("random products factor back to their parts") {
  std::mt19937 rng(424242u);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int iter = 0; iter < 40; ++iter) {
    IntPolynomial a, b;
    do {
      a = poly({coeff(rng), coeff(rng), coeff(rng), 1});
    } while (a.degree() < 1);
    do {
      b = poly({coeff(rng), coeff(rng), 1});
    } while (b.degree() < 1);
    IntPolynomial prod = (a * b).primitive();
    auto factors = factor_over_q(prod);
    IntPolynomial rebuilt = poly({1});
    for (const auto& [p, mult] : factors) {
      REQUIRE(is_irreducible_over_q(p));
      for (unsigned m = 0; m < mult; ++m) rebuilt = rebuilt * p;
    }
    REQUIRE(rebuilt.primitive() == prod);
  }
}

TEST_CASE("resultants of small polynomials") {
  // res(x - 5, x^2 + 1) = value of x^2+1 at 5
  REQUIRE(resultant(poly({-5, 1}), poly({1, 0, 1})) == 26);
  // res(x^2 - 2, x^2 - 3) = (2 - 3)^2 = 1
  REQUIRE(resultant(poly({-2, 0, 1}), poly({-3, 0, 1})) == 1);
  // shared root -> 0
  REQUIRE(resultant(poly({-2, 0, 1}), poly({-2, 3, -3, 1}) * poly({-2, 0, 1})) == 0);
  // res(f, g) = (-1)^{deg f deg g} res(g, f); both products here are even.
  IntPolynomial f = poly({1, 2, 3});
  IntPolynomial g = poly({-1, 0, 0, 1});
  REQUIRE(resultant(f, g) == resultant(g, f));  // 2*3 even
  IntPolynomial h = poly({4, 1});
  // deg f * deg h = 2, still even; compare against the direct evaluation
  // res(h, f) = f(-4) since h is monic linear.
  REQUIRE(resultant(h, f) == f.eval_q(-4));
  REQUIRE(resultant(f, h) == resultant(h, f));
}

TEST_CASE("resultant matches the product formula on random inputs") {
  std::mt19937 rng(1357911u);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int iter = 0; iter < 30; ++iter) {
    IntPolynomial f, g;
    do {
      f = poly({coeff(rng), coeff(rng), 1});
    } while (f.degree() < 1);
    do {
      g = poly({coeff(rng), coeff(rng), coeff(rng)});
    } while (g.degree() < 1);
    // res(f, g) = lead(f)^{deg g} * prod over roots a of f of g(a).
    // For monic quadratic f = (x-r)(x-s): res = g(r) g(s), a symmetric
    // function computable from the coefficients: with f = x^2 + px + q,
    // r+s = -p, rs = q.
    mpq_class p(f[1]), q(f[0]);
    mpq_class g0(g[0]), g1 = g.degree() >= 1 ? mpq_class(g[1]) : mpq_class(0),
                        g2 = g.degree() >= 2 ? mpq_class(g[2]) : mpq_class(0);
    // g(r)g(s) expanded in e1 = r+s = -p, e2 = rs = q:
    // (g2 r^2 + g1 r + g0)(g2 s^2 + g1 s + g0)
    mpq_class e1 = -p, e2 = q;
    mpq_class r2s2 = e2 * e2;
    mpq_class rs_sum = e1;                // r + s
    mpq_class r2_plus_s2 = e1 * e1 - 2 * e2;
    mpq_class r2s_plus_rs2 = e2 * e1;     // rs(r+s)
    mpq_class expect = g2 * g2 * r2s2 + g1 * g1 * e2 + g0 * g0 + g2 * g1 * r2s_plus_rs2 +
                       g2 * g0 * r2_plus_s2 + g1 * g0 * rs_sum;
    mpq_class lead_pow = 1;  // lead(f) = 1
    REQUIRE(resultant(f, g) == expect * lead_pow);
  }
}

TEST_CASE("exact evaluation and structure helpers") {
  IntPolynomial f = poly({-2, 0, 1});
  REQUIRE(f.eval_q(mpq_class(3, 2)) == mpq_class(1, 4));
  REQUIRE(f.reversed() == poly({1, 0, -2}));
  REQUIRE(f.derivative() == poly({0, 2}));
  REQUIRE(poly({2, -4, 6}).primitive() == poly({1, -2, 3}));
  REQUIRE(poly({-2, 4, -6}).primitive() == poly({1, -2, 3}));
  REQUIRE(poly({1, 2, 1}).of_negated_argument() == poly({1, -2, 1}));
}
