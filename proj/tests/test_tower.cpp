#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "northcott/tower.hpp"

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

std::vector<long> degrees(const TowerSpec& spec) {
  std::vector<long> out;
  for (const auto& lvl : spec.levels) out.push_back(lvl.d.get_si());
  return out;
}

}  // namespace

TEST_CASE("the unit-weight tower reproduces the frozen level data") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 3);
  REQUIRE(degrees(spec) == std::vector<long>{2, 5, 7});
  REQUIRE(spec.levels[0].p == 5);
  REQUIRE(spec.levels[1].p == 37);
  REQUIRE(spec.levels[2].p == 131);
  REQUIRE(spec.levels[0].q == 7);
  REQUIRE(spec.levels[1].q == 41);
  REQUIRE(spec.levels[2].q == 137);
  for (unsigned long i = 1; i <= 3; ++i) {
    REQUIRE(spec.levels[i - 1].big_d == spec.levels[i - 1].d);
    REQUIRE(verify_level(spec, i).all());
  }
  // Thresholds are d_i * log 2 exactly.
  REQUIRE(quantity_equals(spec.levels[0].threshold_log, Quantity::from_loglinear(ll_log(2, 2))));
  REQUIRE(quantity_equals(spec.levels[1].threshold_log, Quantity::from_loglinear(ll_log(2, 5))));
  REQUIRE(quantity_equals(spec.levels[2].threshold_log, Quantity::from_loglinear(ll_log(2, 7))));

  // Determinism: a second run produces the identical records.
  TowerSpec again = build_tower(ll_log(2), 1, Weight::constant(1), 3);
  REQUIRE(again.levels.size() == spec.levels.size());
  for (size_t k = 0; k < spec.levels.size(); ++k) {
    REQUIRE(again.levels[k].d == spec.levels[k].d);
    REQUIRE(again.levels[k].p == spec.levels[k].p);
    REQUIRE(again.levels[k].q == spec.levels[k].q);
    REQUIRE(again.levels[k].big_d == spec.levels[k].big_d);
  }
}

TEST_CASE("a twelve-level unit-weight run walks the odd primes with gap two") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 12);
  REQUIRE(degrees(spec) ==
          std::vector<long>{2, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41});

  std::set<mpz_class> ps, qs;
  for (size_t k = 0; k < spec.levels.size(); ++k) {
    REQUIRE(verify_level(spec, k + 1).all());
    if (k > 0) {
      REQUIRE(spec.levels[k].d > spec.levels[k - 1].d);
      REQUIRE(spec.levels[k].p > spec.levels[k - 1].p);
      REQUIRE(spec.levels[k].q > spec.levels[k - 1].q);
    }
    ps.insert(spec.levels[k].p);
    qs.insert(spec.levels[k].q);
  }
  for (const auto& p : ps) REQUIRE(qs.count(p) == 0);

  // Exact sandwich at every level: log p >= threshold and
  // log q < threshold + log 4.
  Quantity log4q = Quantity::from_loglinear(ll_log(2, 2));
  for (const auto& lvl : spec.levels) {
    Quantity logp = Quantity::from_loglinear(LogLinear::log_of_prime(lvl.p));
    Quantity logq = Quantity::from_loglinear(LogLinear::log_of_prime(lvl.q));
    REQUIRE(compare(logp, lvl.threshold_log) != Cmp::Less);
    REQUIRE(compare(logq, lvl.threshold_log + log4q) == Cmp::Less);
  }

  // The witness heights stay above the target and decrease monotonically
  // after the first level.
  Quantity target = Quantity::from_loglinear(ll_log(2));
  Quantity prev = Quantity::from_rational(0);
  for (unsigned long i = 1; i <= 12; ++i) {
    Witness wit = witness(spec, i, WitnessVariant::NthRoot);
    REQUIRE(compare(wit.weighted_height, target) == Cmp::Greater);
    if (i >= 2) REQUIRE(compare(wit.weighted_height, prev) != Cmp::Greater);
    prev = wit.weighted_height;
  }
}

TEST_CASE("a small target constant pushes the first degree up") {
  TowerSpec spec = build_tower(ll_log(2, mpq_class(1, 100)), 1, Weight::constant(1), 1);
  REQUIRE(spec.levels[0].d == 101);
  REQUIRE(spec.levels[0].p == 3);
  REQUIRE(spec.levels[0].q == 5);
  REQUIRE(verify_level(spec, 1).all());
}

TEST_CASE("ineligible weights and bad arguments are rejected") {
  REQUIRE_THROWS_MATCHES(build_tower(ll_log(2), 1, Weight::power(mpq_class(3, 2)), 1),
                         Error, throws_code(ErrorCode::WeightIneligible));
  REQUIRE_THROWS_MATCHES(build_tower(ll_log(2), 1, Weight::dobrowolski(), 1), Error,
                         throws_code(ErrorCode::WeightIneligible));
  REQUIRE_THROWS_MATCHES(build_tower(LogLinear(), 1, Weight::constant(1), 1), Error,
                         throws_code(ErrorCode::InvalidInput));
  REQUIRE_THROWS_MATCHES(build_tower(-ll_log(2), 1, Weight::constant(1), 1), Error,
                         throws_code(ErrorCode::InvalidInput));
  REQUIRE_THROWS_MATCHES(build_tower(ll_log(2), 0, Weight::constant(1), 1), Error,
                         throws_code(ErrorCode::InvalidInput));
}

TEST_CASE("level verification flags mutated specs") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 3);

  TowerSpec bad_q = spec;
  bad_q.levels[0].q = 11;  // 11 >= 2*5
  LevelCheck c1 = verify_level(bad_q, 1);
  REQUIRE_FALSE(c1.companion_window);
  REQUIRE(c1.prime_window);

  TowerSpec bad_d = spec;
  bad_d.levels[1].d = 3;  // threshold gap 4*4 > 2^3
  LevelCheck c2 = verify_level(bad_d, 2);
  REQUIRE_FALSE(c2.threshold_gap);

  TowerSpec bad_p = spec;
  bad_p.levels[0].p = 11;  // outside [4, 8]
  LevelCheck c3 = verify_level(bad_p, 1);
  REQUIRE_FALSE(c3.prime_window);
  REQUIRE(c3.companion_window == false);  // 11 < q = 7 fails too

  REQUIRE_THROWS_MATCHES(verify_level(spec, 0), Error, throws_code(ErrorCode::InvalidInput));
  REQUIRE_THROWS_MATCHES(verify_level(spec, 4), Error, throws_code(ErrorCode::InvalidInput));
}

TEST_CASE("witnesses carry exact heights that shrink toward the target") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 3);

  Witness w1 = witness(spec, 1, WitnessVariant::NthRoot);
  REQUIRE(w1.element == make_radical(5, 7, 2));
  REQUIRE(w1.height == ll_log(7, mpq_class(1, 2)));
  REQUIRE(quantity_equals(w1.weighted_height,
                          Quantity::from_loglinear(ll_log(7, mpq_class(1, 2)))));
  REQUIRE(std::abs(w1.weighted_height.approx() - 0.9729550745) < 1e-8);

  Witness w2 = witness(spec, 2, WitnessVariant::NthRoot);
  REQUIRE(w2.height == ll_log(41, mpq_class(1, 5)));
  REQUIRE(std::abs(w2.weighted_height.approx() - 0.7427144133) < 1e-8);

  Witness w3 = witness(spec, 3, WitnessVariant::NthRoot);
  REQUIRE(w3.height == ll_log(137, mpq_class(1, 7)));
  REQUIRE(std::abs(w3.weighted_height.approx() - 0.7028544180) < 1e-8);

  REQUIRE_THROWS_MATCHES(witness(spec, 1, WitnessVariant::ProductRoot), Error,
                         throws_code(ErrorCode::VariantMismatch));
  REQUIRE_THROWS_MATCHES(witness(spec, 4, WitnessVariant::NthRoot), Error,
                         throws_code(ErrorCode::InvalidInput));
}

TEST_CASE("the square-root weight tower grows quadratically") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::power(mpq_class(1, 2)), 10);
  REQUIRE(degrees(spec) ==
          std::vector<long>{2, 13, 37, 67, 107, 157, 223, 293, 367, 449});

  Quantity target = Quantity::from_loglinear(ll_log(2));
  Quantity log4q = Quantity::from_loglinear(ll_log(2, 2));
  for (unsigned long i = 1; i <= 10; ++i) {
    REQUIRE(verify_level(spec, i).all());
    Witness wit = witness(spec, i, WitnessVariant::NthRoot);
    // log 2 < h^w < log 2 + log 4 / sqrt(d_i), exactly.
    REQUIRE(compare(wit.weighted_height, target) == Cmp::Greater);
    Quantity bound = target + log4q / spec.w.eval(spec.levels[i - 1].d);
    REQUIRE(compare(wit.weighted_height, bound) == Cmp::Less);
  }
}

TEST_CASE("vanishing weights force the decay proxy and the product witness") {
  Weight w = Weight::power(mpq_class(-1, 2));
  TowerSpec spec = build_tower(ll_log(2), 1, w, 2);
  REQUIRE(spec.levels[0].d == 2);
  REQUIRE(spec.levels[0].p == 11);  // window [2^{2 sqrt 2}, 2^{1 + 2 sqrt 2}] ~ [7.10, 14.21]
  REQUIRE(spec.levels[0].q == 13);
  REQUIRE(spec.levels[1].d == 17);  // least prime with 4/sqrt(2 d) < 1/sqrt 2
  REQUIRE(spec.levels[0].big_d == 2);
  REQUIRE(spec.levels[1].big_d == 34);
  REQUIRE(verify_level(spec, 1).all());
  REQUIRE(verify_level(spec, 2).all());

  Witness w1 = witness(spec, 1, WitnessVariant::ProductRoot);
  REQUIRE(w1.element == make_radical(11, 13, 2));
  REQUIRE(w1.height == ll_log(13, mpq_class(1, 2)));

  Witness w2 = witness(spec, 2, WitnessVariant::ProductRoot);
  REQUIRE(w2.element.degree() == 34);
  LogLinear expect = ll_log(13, mpq_class(1, 2));
  expect += LogLinear::log_of_prime(spec.levels[1].q, mpq_class(1, 17));
  REQUIRE(w2.height == expect);
  // h^w = h / sqrt(34): numeric cross-check.
  double h = w2.height.eval(192).mid();
  REQUIRE(std::abs(w2.weighted_height.approx() - h / std::sqrt(34.0)) < 1e-9);

  REQUIRE_THROWS_MATCHES(witness(spec, 1, WitnessVariant::NthRoot), Error,
                         throws_code(ErrorCode::VariantMismatch));
}

TEST_CASE("higher root indices rescale thresholds and witness degrees") {
  TowerSpec spec = build_tower(ll_log(2), 2, Weight::constant(1), 2);
  REQUIRE(degrees(spec) == std::vector<long>{2, 3});
  REQUIRE(spec.levels[0].p == 17);  // window [16, 32]
  REQUIRE(spec.levels[0].q == 19);
  REQUIRE(spec.levels[1].p == 67);  // window [64, 128]
  REQUIRE(spec.levels[1].q == 71);
  REQUIRE(verify_level(spec, 1).all());
  REQUIRE(verify_level(spec, 2).all());

  Witness w1 = witness(spec, 1, WitnessVariant::NthRoot);
  REQUIRE(w1.element.degree() == 4);
  REQUIRE(w1.height == ll_log(19, mpq_class(1, 4)));

  // Forcing d_1 > N shifts the whole run.
  TowerSpec shifted = build_tower(ll_log(2), 2, Weight::constant(1), 2, true);
  REQUIRE(degrees(shifted) == std::vector<long>{3, 5});
  REQUIRE(shifted.levels[0].p == 67);
  REQUIRE(shifted.levels[0].q == 71);
  REQUIRE(shifted.levels[1].p == 1031);  // window [1024, 2048]
  REQUIRE(shifted.levels[1].q == 1033);
  REQUIRE(verify_level(shifted, 1).all());
  REQUIRE(verify_level(shifted, 2).all());
}

TEST_CASE("boxed weights still produce verifiable towers") {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::over_log_squared(), 2);
  REQUIRE(degrees(spec) == std::vector<long>{7, 13});
  REQUIRE(spec.levels[0].p == 17);
  REQUIRE(spec.levels[0].q == 19);
  REQUIRE(spec.levels[1].p == 97);
  REQUIRE(spec.levels[1].q == 101);
  REQUIRE_FALSE(spec.levels[0].threshold_log.is_exact());
  REQUIRE(verify_level(spec, 1).all());
  REQUIRE(verify_level(spec, 2).all());
}
