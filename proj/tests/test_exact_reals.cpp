#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "northcott/loglinear.hpp"
#include "northcott/primes.hpp"
#include "northcott/value.hpp"

using namespace northcott;

namespace {

// Trial-division oracle for small n.
bool oracle_is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<unsigned long> sieve_upto(unsigned long limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (unsigned long j = 2 * i; j <= limit; j += i) comp[j] = true;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("log linear construction folds prime powers", "[loglinear]") {
  LogLinear l = LogLinear::from(mpq_class(1, 3), 8);
  REQUIRE(l.terms().size() == 1);
  REQUIRE(l.terms().begin()->first == 2);
  REQUIRE(l.terms().begin()->second == 1);

  LogLinear l2 = LogLinear::from(mpq_class(2), 12);  // 2*log 12 = 4 log 2 + 2 log 3
  REQUIRE(l2.terms().at(2) == 4);
  REQUIRE(l2.terms().at(3) == 2);

  REQUIRE(LogLinear::from(1, 1).is_zero());
  REQUIRE_THROWS_AS(LogLinear::from(1, 0), Error);
}

TEST_CASE("certified comparison separates close values", "[loglinear]") {
  LogLinear log3 = LogLinear::from(1, 3);
  LogLinear threehalves_log2 = LogLinear::from(mpq_class(3, 2), 2);
  REQUIRE(ll_compare(log3, threehalves_log2) == Cmp::Greater);
  REQUIRE(ll_compare(threehalves_log2, log3) == Cmp::Less);
  REQUIRE(ll_compare(log3, log3) == Cmp::Equal);

  // log 2 + log 3 = log 6 structurally.
  REQUIRE(LogLinear::from(1, 2) + LogLinear::from(1, 3) == LogLinear::from(1, 6));
}

TEST_CASE("comparison trichotomy on random inputs", "[loglinear][property]") {
  std::mt19937 rng(20260823);
  std::uniform_int_distribution<int> base(2, 400);
  std::uniform_int_distribution<int> numd(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    LogLinear a = LogLinear::from(mpq_class(numd(rng), numd(rng)), base(rng)) -
                  LogLinear::from(mpq_class(numd(rng), numd(rng)), base(rng));
    LogLinear b = LogLinear::from(mpq_class(numd(rng), numd(rng)), base(rng)) -
                  LogLinear::from(mpq_class(numd(rng), numd(rng)), base(rng));
    Cmp ab = ll_compare(a, b);
    Cmp ba = ll_compare(b, a);
    REQUIRE(static_cast<int>(ab) == -static_cast<int>(ba));
    if (ab == Cmp::Equal) {
      REQUIRE(a == b);
    } else {
      REQUIRE(!(a == b));
    }
    // Consistency with float approximation at coarse tolerance.
    double da = a.approx(), db = b.approx();
    if (ab == Cmp::Greater) REQUIRE(da > db - 1e-9);
    if (ab == Cmp::Less) REQUIRE(da < db + 1e-9);
  }
}

TEST_CASE("primality agrees with trial division and handles Carmichael numbers", "[primes]") {
  REQUIRE(is_prime(2));
  REQUIRE(!is_prime(561));  // Carmichael
  REQUIRE(is_prime(mpz_class(1000000007)));
  REQUIRE(!is_prime(1));
  REQUIRE(!is_prime(0));

  for (unsigned long n = 1; n <= 2000; ++n) {
    REQUIRE(is_prime(mpz_class(n)) == oracle_is_prime(n));
  }

  // Large prime beyond the deterministic witness bound (2^89 - 1, Mersenne).
  mpz_class m89;
  mpz_ui_pow_ui(m89.get_mpz_t(), 2, 89);
  m89 -= 1;
  REQUIRE(is_prime(m89));
  REQUIRE(!is_prime(m89 + 2));
}

TEST_CASE("prime windows with integer bounds", "[primes]") {
  auto p = smallest_prime_in(4, 8);
  REQUIRE(p.has_value());
  REQUIRE(*p == 5);

  REQUIRE(!smallest_prime_in(24, 28).has_value());

  auto q = smallest_prime_in(5, 10, true, true);
  REQUIRE(q.has_value());
  REQUIRE(*q == 7);

  auto r = smallest_prime_in(5, 7, true, true);
  REQUIRE(!r.has_value());  // only 7 in (5,7) excluded by strict hi? window empty
}

TEST_CASE("prime windows match a sieve oracle", "[primes][property]") {
  auto primes = sieve_upto(1 << 16);
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned long> lo_d(2, (1 << 16) - 300);
  std::uniform_int_distribution<unsigned long> width_d(0, 280);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned long lo = lo_d(rng);
    unsigned long hi = lo + width_d(rng);
    bool slo = trial % 2, shi = trial % 3 == 0;
    auto got = smallest_prime_in(mpz_class(lo), mpz_class(hi), slo, shi);
    unsigned long expect = 0;
    for (unsigned long p : primes) {
      if (p > hi || (shi && p == hi)) break;
      if (p < lo || (slo && p == lo)) continue;
      expect = p;
      break;
    }
    if (expect == 0) {
      REQUIRE(!got.has_value());
    } else {
      REQUIRE(got.has_value());
      REQUIRE(*got == expect);
    }
  }
}

TEST_CASE("factorization recombines", "[primes][property]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<unsigned long> d(1, 4000000);
  for (int trial = 0; trial < 100; ++trial) {
    mpz_class n(d(rng));
    mpz_class back = 1;
    for (const auto& [p, e] : factor(n)) {
      REQUIRE(is_prime(p));
      for (unsigned long i = 0; i < e; ++i) back *= p;
    }
    REQUIRE(back == n);
  }
  // A semiprime of two 11-digit primes exercises the rho path.
  mpz_class a("10000000019");
  mpz_class b("10000000033");
  auto f = factor(a * b);
  REQUIRE(f.size() == 2);
  REQUIRE(f.at(a) == 1);
  REQUIRE(f.at(b) == 1);
}

TEST_CASE("radical values canonicalize perfect powers", "[value]") {
  Value two = Value::radical(4, mpq_class(1, 2));
  REQUIRE(two == Value::from_rational(2));
  REQUIRE(two.as_rational().has_value());

  Value v = Value::radical(mpq_class(8), mpq_class(2, 3));  // 8^(2/3) = 4
  REQUIRE(v == Value::from_rational(4));

  Value sqrt2 = Value::radical(2, mpq_class(1, 2));
  REQUIRE(!sqrt2.as_rational().has_value());
  Value prod = sqrt2 * sqrt2;
  REQUIRE(prod == Value::from_rational(2));

  // 2^(3/2) = 2 * 2^(1/2)
  Value v32 = Value::radical(2, mpq_class(3, 2));
  REQUIRE(v32 == mpq_class(2) * sqrt2);
}

TEST_CASE("value sign certification across mixed parts", "[value]") {
  // sqrt(2)*log(3) - log(4) > 0 since 1.414*1.098 = 1.553 > 1.386
  Value v = Value::radical(2, mpq_class(1, 2)) * Value::from_loglinear(LogLinear::from(1, 3)) -
            Value::from_loglinear(LogLinear::from(1, 4));
  REQUIRE(v.sign() == 1);

  // sqrt(2)*log(2) - sqrt(8)*log(2) + log(4) = (sqrt2 - 2 sqrt2 + 2/... ) check:
  // sqrt(8) = 2 sqrt(2), so the radical parts cancel to -sqrt(2) log 2 + 2 log 2 > 0.
  Value w = Value::radical(2, mpq_class(1, 2)) * Value::from_loglinear(LogLinear::from(1, 2)) -
            Value::radical(8, mpq_class(1, 2)) * Value::from_loglinear(LogLinear::from(1, 2)) +
            Value::from_loglinear(LogLinear::from(1, 4));
  REQUIRE(w.sign() == 1);

  // Structural cancellation to zero.
  Value z = Value::radical(2, mpq_class(1, 2)) * Value::from_loglinear(LogLinear::from(1, 2)) -
            mpq_class(1, 2) *
                (Value::radical(8, mpq_class(1, 2)) * Value::from_loglinear(LogLinear::from(1, 2)));
  REQUIRE(z.is_zero());
  REQUIRE(z.sign() == 0);
}

TEST_CASE("products of logarithmic values are rejected", "[value]") {
  Value l2 = Value::from_loglinear(LogLinear::from(1, 2));
  REQUIRE_THROWS_AS(l2 * l2, Error);
}

TEST_CASE("quantity ratio comparisons stay exact", "[value]") {
  // (d / log 2) * (log 2 / d) = 1 exactly.
  Value log2 = Value::from_loglinear(LogLinear::from(1, 2));
  Quantity w = Quantity::ratio(Value::from_rational(5), log2);
  Quantity h = Quantity::from_value(log2 * mpq_class(1, 5));
  Quantity prod = w * h;
  REQUIRE(compare(prod, Quantity::from_rational(1)) == Cmp::Equal);

  // h / log2-weight >= 1 iff h >= log 2.
  Quantity big = Quantity::from_loglinear(LogLinear::from(1, 3));
  REQUIRE(compare(Quantity::ratio(Value::from_loglinear(LogLinear::from(1, 3)), log2),
                  Quantity::from_rational(1)) == Cmp::Greater);
  REQUIRE(big > Quantity::from_loglinear(LogLinear::from(1, 2)));
}

TEST_CASE("log-space prime windows", "[value][primes]") {
  // x = 2 log 2 -> [4, 8] -> 5
  Quantity x = Quantity::from_loglinear(LogLinear::from(2, 2));
  Quantity y = x + Quantity::from_loglinear(LogLinear::from(1, 2));
  auto p = smallest_prime_in_exp(x, y);
  REQUIRE(p.has_value());
  REQUIRE(*p == 5);

  // x = 7 log 2 -> [128, 256] -> 131
  Quantity x7 = Quantity::from_loglinear(LogLinear::from(7, 2));
  Quantity y7 = x7 + Quantity::from_loglinear(LogLinear::from(1, 2));
  auto p7 = smallest_prime_in_exp(x7, y7);
  REQUIRE(p7.has_value());
  REQUIRE(*p7 == 131);

  // Exact boundary: window [e^log 5, ...] includes 5; strict excludes it.
  Quantity l5 = Quantity::from_loglinear(LogLinear::from(1, 5));
  Quantity l6 = Quantity::from_loglinear(LogLinear::from(1, 6));
  auto inc = smallest_prime_in_exp(l5, l6);
  REQUIRE(inc.has_value());
  REQUIRE(*inc == 5);
  auto exc = smallest_prime_in_exp(l5, l6, true, false);
  REQUIRE(!exc.has_value());  // next prime 7 > e^log6 = 6
}

TEST_CASE("scaled-radical threshold comparisons terminate", "[value]") {
  // log p vs sqrt(d)*log 2 for the d^(1/2)-weight tower arithmetic.
  Value c = Value::from_loglinear(LogLinear::from(1, 2));
  Value t13 = Value::radical(13, mpq_class(1, 2)) * c;  // sqrt(13) log 2 ~ 2.499
  Quantity logp = Quantity::from_loglinear(LogLinear::from(1, 13));  // log 13 ~ 2.565
  REQUIRE(compare(logp, Quantity::from_value(t13)) == Cmp::Greater);

  Quantity log11 = Quantity::from_loglinear(LogLinear::from(1, 11));  // 2.398
  REQUIRE(compare(log11, Quantity::from_value(t13)) == Cmp::Less);
}
