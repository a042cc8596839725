#pragma once
// Built-in verification suite: nine numbered checks covering tower
// construction, bracket convergence, weighted towers, the rescaling constant,
// the subgroup census, spectral heights, operator heights, bounded-height
// enumeration, and the core height identities. The CLI selftest subcommand
// and the standalone acceptance runner share this code; each check reports a
// pass flag, its wall time, and a short detail line.

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "northcott/estimator.hpp"
#include "northcott/galois.hpp"
#include "northcott/heights.hpp"
#include "northcott/matrix_heights.hpp"
#include "northcott/tower.hpp"
#include "northcott/weights.hpp"

namespace northcott {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // empty on success, otherwise the first failure seen
};

namespace selfdetail {

class Reporter {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && detail_.empty()) detail_ = what;
    pass_ = pass_ && ok;
  }
  bool pass() const { return pass_; }
  const std::string& detail() const { return detail_; }

 private:
  bool pass_ = true;
  std::string detail_;
};

inline Quantity abs_quantity(const Quantity& q) {
  return q.sign_or_zero() < 0 ? q * mpq_class(-1) : q;
}

inline LogLinear ll_log(long p, const mpq_class& c = 1) {
  return LogLinear::log_of_prime(mpz_class(p), c);
}

inline Quantity qlog2() { return Quantity::from_loglinear(ll_log(2)); }
inline Quantity qlog4() { return Quantity::from_loglinear(ll_log(2, 2)); }

// Random diagonal matrices over the supported monomial classes, shared with
// the operator-height check: even draws are real (signs and arbitrary real
// radicals), odd draws anchor a higher-order root of unity by a pure
// cyclotomic ratio and share one radical part.
inline std::vector<RadicalMonomial> random_diagonal(std::mt19937& rng, int it) {
  std::uniform_int_distribution<int> pick_small(0, 4);
  std::uniform_int_distribution<int> numer(-3, 3);
  std::uniform_int_distribution<int> denom(1, 3);
  const long primes[3] = {2, 3, 5};
  auto random_scalar = [&]() {
    mpq_class scalar(2 * numer(rng) + 1, denom(rng));
    scalar.canonicalize();
    return scalar;
  };
  auto random_exps = [&]() {
    RadicalMonomial::Exponents exps;
    for (long p : primes) {
      if (pick_small(rng) < 2) {
        mpq_class e(numer(rng), denom(rng));
        e.canonicalize();
        if (e != 0) exps[p] = e;
      }
    }
    return exps;
  };
  unsigned long n = 2 + static_cast<unsigned long>(it % 3);
  std::vector<RadicalMonomial> entries;
  if (it % 2 == 0) {
    for (unsigned long j = 0; j < n; ++j) {
      unsigned long m = pick_small(rng) < 2 ? 2 : 1;
      entries.push_back(
          RadicalMonomial::from_parts(m, m - 1, random_scalar(), random_exps()));
    }
  } else {
    const unsigned long orders[3] = {3, 4, 6};
    unsigned long m = orders[static_cast<std::size_t>(it / 2) % 3];
    RadicalMonomial::Exponents shared = random_exps();
    auto positive_scalar = [&]() { return mpq_class(abs(random_scalar())); };
    entries.push_back(RadicalMonomial::from_parts(1, 0, positive_scalar(), {}));
    entries.push_back(RadicalMonomial::from_parts(m, 1, positive_scalar(), {}));
    for (unsigned long j = 2; j < n; ++j) {
      unsigned long k = static_cast<unsigned long>(pick_small(rng)) % m;
      bool with_radical = pick_small(rng) < 3;
      entries.push_back(RadicalMonomial::from_parts(
          m, k, positive_scalar(),
          with_radical ? shared : RadicalMonomial::Exponents{}));
    }
  }
  return entries;
}

// --- check 1: the constant-weight tower reproduces the frozen level data ---
inline void check_tower_reproduction(Reporter& r) {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 12);
  const long expected_d[12] = {2, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (int i = 0; i < 12; ++i) {
    r.expect(spec.levels[static_cast<std::size_t>(i)].d == expected_d[i],
             "degree sequence mismatch at level " + std::to_string(i + 1));
  }
  const long expected_p[3] = {5, 37, 131};
  const long expected_q[3] = {7, 41, 137};
  for (int i = 0; i < 3; ++i) {
    r.expect(spec.levels[static_cast<std::size_t>(i)].p == expected_p[i],
             "p mismatch at level " + std::to_string(i + 1));
    r.expect(spec.levels[static_cast<std::size_t>(i)].q == expected_q[i],
             "q mismatch at level " + std::to_string(i + 1));
  }
  for (unsigned long i = 1; i <= 12; ++i) {
    r.expect(verify_level(spec, i).all(),
             "level " + std::to_string(i) + " fails verification");
  }
}

// --- check 2: constant-weight bracket convergence -------------------------
inline void check_bracket_convergence(Reporter& r) {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 12);
  NorBracket br = northcott_bracket(spec);
  r.expect(br.levels.size() == 12, "bracket must cover all 12 levels");
  if (br.levels.size() != 12) return;
  Quantity c = qlog2();
  for (std::size_t i = 0; i < br.levels.size(); ++i) {
    r.expect(compare(br.levels[i].upper, c) == Cmp::Greater,
             "witness height not above the threshold");
    if (i > 0) {
      r.expect(compare(br.levels[i].upper, br.levels[i - 1].upper) == Cmp::Less,
               "witness heights must decrease");
    }
  }
  // First level whose degree reaches 17.
  std::size_t i0 = 0;
  while (i0 < br.levels.size() && spec.levels[i0].d < 17) ++i0;
  r.expect(i0 < br.levels.size() && spec.levels[i0].d == 17,
           "no level of degree 17");
  if (i0 >= br.levels.size()) return;
  const auto& lvl = br.levels[i0];
  r.expect(compare(lvl.upper - c, qlog4() * mpq_class(1, 17)) != Cmp::Greater,
           "witness gap above log(4)/17");
  Quantity floor17 = c - Quantity::from_loglinear(ll_log(17)) * mpq_class(1, 32);
  r.expect(compare(lvl.lower, floor17) != Cmp::Less,
           "lower estimate under log 2 - log(17)/32");
  Quantity width = lvl.upper - lvl.lower;
  r.expect(compare(width, Quantity::from_rational(mpq_class(17, 100))) != Cmp::Greater,
           "bracket width above 0.17 at degree 17");
  for (std::size_t i = i0 + 1; i < br.levels.size(); ++i) {
    Quantity next = br.levels[i].upper - br.levels[i].lower;
    r.expect(compare(next, width) == Cmp::Less, "bracket width must shrink");
    width = next;
  }
}

// --- check 3: the square-root-weight tower at depth 20 --------------------
inline void check_weighted_tower(Reporter& r) {
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::power(mpq_class(1, 2)), 20);
  r.expect(spec.levels.size() == 20, "tower must reach 20 levels");
  Quantity c = qlog2();
  for (unsigned long i = 1; i <= spec.levels.size(); ++i) {
    r.expect(verify_level(spec, i).all(),
             "level " + std::to_string(i) + " fails verification");
    Witness wit = witness(spec, i, WitnessVariant::NthRoot);
    Quantity gap = abs_quantity(wit.weighted_height - c);
    Quantity bound = qlog4() * Quantity::from_value(
                                   Value::radical(mpq_class(spec.levels[i - 1].d),
                                                  mpq_class(-1, 2)));
    r.expect(compare(gap, bound) != Cmp::Greater,
             "weighted witness at level " + std::to_string(i) +
                 " misses log 2 by more than log(4)/sqrt(d)");
  }
}

// --- check 4: quartic extensions under the square-root weight -------------
inline void check_rescaling_constant(Reporter& r) {
  Weight w = Weight::power(mpq_class(1, 2));
  Weight::LwResult lw = l_w(w, 4);
  r.expect(lw.outcome == Weight::LwResult::Outcome::Finite,
           "rescaling limit must be finite");
  r.expect(compare(lw.value, Quantity::from_rational(2)) == Cmp::Equal,
           "rescaling limit of 4 must equal 2");
  TowerSpec spec = build_tower(ll_log(2), 1, w, 20);
  Quantity half = qlog2() * mpq_class(1, 2);
  bool saw_deep = false;
  for (const LevelRecord& lvl : spec.levels) {
    RadicalMonomial a4 = make_radical(lvl.p, lvl.q, lvl.d.get_si()).nth_root(4);
    Quantity hw = weighted_height(a4, w);
    Quantity gap = abs_quantity(hw - half);
    Quantity bound =
        qlog4() *
        Quantity::from_value(Value::radical(mpq_class(lvl.d), mpq_class(-1, 2))) *
        mpq_class(1, 2);
    r.expect(compare(gap, bound) != Cmp::Greater,
             "quartic witness misses (log 2)/2 by more than log(4)/(2 sqrt d)");
    if (lvl.d >= 1601) {
      saw_deep = true;
      r.expect(compare(gap, half * mpq_class(1, 20)) != Cmp::Greater,
               "deviation above 5% at degree " + lvl.d.get_str());
    }
  }
  r.expect(saw_deep, "no level of degree at least 1601 computed");
}

// --- check 5: subgroup census over all supported primes -------------------
inline void check_subgroup_census(Reporter& r) {
  const unsigned long ds[10] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  for (unsigned long d : ds) {
    SubgroupCensus c = subgroup_census(d);
    auto count_of = [&](unsigned long order) {
      auto it = c.counts.find(order);
      return it == c.counts.end() ? 0ul : it->second;
    };
    r.expect(count_of(d) == 1,
             "d=" + std::to_string(d) + ": want one subgroup of order d");
    r.expect(count_of(d - 1) == d,
             "d=" + std::to_string(d) + ": want d subgroups of order d-1");
    r.expect(c.unique_order_d,
             "d=" + std::to_string(d) + ": order-d uniqueness claim not set");
    r.expect(c.d_many_order_dm1,
             "d=" + std::to_string(d) + ": order-(d-1) count claim not set");
    r.expect(c.divisible_contains_kernel,
             "d=" + std::to_string(d) + ": divisible orders must contain the kernel");
    r.expect(c.coprime_inside_stabilizer,
             "d=" + std::to_string(d) + ": coprime orders must sit in a stabilizer");
  }
}

// --- check 6: spectral heights --------------------------------------------
inline void check_spectral_heights(Reporter& r) {
  StructuredMatrix rot{RationalDense{{{1, 1}, {-1, 1}}}};
  r.expect(spectral_height(rot).is_zero(), "root-of-unity spectrum must have height 0");
  RadicalMonomial a1 = make_radical(5, 7, 2);
  r.expect(spectral_height(StructuredMatrix{CompanionBlock{3, a1}}) ==
               ll_log(7, mpq_class(1, 4)),
           "companion block height must be log(7)/4");
  TowerSpec spec = build_tower(ll_log(2), 1, Weight::constant(1), 8);
  PropSpectralReport rep = prop_spectral_check(spec, 3);
  r.expect(rep.levels.size() == 8, "spectral check must cover 8 levels");
  for (const auto& lvl : rep.levels) {
    r.expect(lvl.upper_within && lvl.equality,
             "level " + std::to_string(lvl.index) +
                 ": constant-weight spectral bracket must match exactly");
  }
}

// --- check 7: operator heights --------------------------------------------
inline void check_operator_heights(Reporter& r) {
  Quantity op = operator_height_diagonal(
      StructuredMatrix{RationalDense{{{3, 0}, {0, 4}}}}, Weight::constant(1));
  r.expect(compare(op, qlog4()) == Cmp::Equal, "diag(3,4) operator height must be log 4");
  LogLinear h2v = h2_height(RationalTuple{{3, 4}});
  r.expect(h2v == ll_log(5), "h2((3,4)) must be log 5 exactly");
  double approx = h2v.eval(192).mid();
  r.expect(std::abs(approx - std::log(5.0)) <= 1e-9,
           "h2((3,4)) float check misses log 5");
  std::mt19937 rng(20260823u);
  std::vector<Weight> weights = {Weight::constant(1), Weight::power(mpq_class(1, 2)),
                                 Weight::dobrowolski(), Weight::power(2),
                                 Weight::over_log_squared()};
  for (int it = 0; it < 100; ++it) {
    StructuredMatrix D{RadicalDiagonal{random_diagonal(rng, it)}};
    const Weight& w = weights[static_cast<std::size_t>(it) % weights.size()];
    r.expect(column_inequality_holds(D, w),
             "column inequality failed on draw " + std::to_string(it));
  }
}

// --- check 8: bounded-height enumeration ----------------------------------
inline void check_bounded_enumeration(Reporter& r) {
  EnumerationResult torsion = enumerate_bounded(2, Quantity::from_rational(mpq_class(1, 5)));
  r.expect(torsion.total == 9,
           "quadratic catalog must hold exactly the 9 torsion points, got " +
               std::to_string(torsion.total));
  Quantity b1 = Quantity::from_loglinear(ll_log(2)) +
                Quantity::from_rational(mpq_class(1, 1000000));
  EnumerationResult rats = enumerate_bounded(1, b1);
  r.expect(rats.total == 7,
           "rational catalog must hold exactly 7 points, got " +
               std::to_string(rats.total));
}

// --- check 9: height identities -------------------------------------------
inline void check_height_identities(Reporter& r) {
  std::mt19937 rng(20260823u);
  std::uniform_int_distribution<long> num(-120, 120);
  std::uniform_int_distribution<long> den(1, 120);
  std::uniform_int_distribution<long> small(1, 5);
  std::uniform_int_distribution<long> root(1, 4);
  for (int it = 0; it < 1000; ++it) {
    // h(p/q) = log max(|p|, |q|) on coprime representatives.
    mpq_class x(num(rng), den(rng));
    if (x == 0) x = 1;
    x.canonicalize();
    mpz_class mx = abs(x.get_num()) > x.get_den() ? mpz_class(abs(x.get_num()))
                                                  : mpz_class(x.get_den());
    r.expect(weil_height(RadicalMonomial::from_rational(x)) ==
                 LogLinear::log_of_rational(mpq_class(mx)),
             "rational height formula failed");
    // Root scaling: h(a^(1/n)) = h(a)/n.
    mpq_class base(small(rng) + 1, small(rng));
    base.canonicalize();
    unsigned long k = static_cast<unsigned long>(small(rng));
    unsigned long n = static_cast<unsigned long>(root(rng));
    RadicalMonomial a = RadicalMonomial::rational_power(base, mpq_class(1, k));
    LogLinear scaled = weil_height(a);
    scaled *= mpq_class(1, n);
    r.expect(weil_height(a.nth_root(n)) == scaled, "root scaling failed");
    // Subadditivity: h(ab) <= h(a) + h(b).
    mpq_class base2(small(rng), small(rng) + 1);
    base2.canonicalize();
    RadicalMonomial b = RadicalMonomial::rational_power(base2, mpq_class(1, root(rng)));
    r.expect(ll_compare(weil_height(a * b), weil_height(a) + weil_height(b)) !=
                 Cmp::Greater,
             "product subadditivity failed");
  }
  // Product formula: summing one element over every place gives exactly zero.
  for (int it = 0; it < 500; ++it) {
    mpq_class x(num(rng), den(rng));
    if (x == 0) x = 1;
    x.canonicalize();
    r.expect(monomial_tuple_height({RadicalMonomial::from_rational(x)}).is_zero(),
             "product formula residual must vanish");
  }
}

}  // namespace selfdetail

// Time budgets, in seconds, for the checks the contract bounds.
inline double check_time_budget(int id) {
  switch (id) {
    case 1: return 60.0;
    case 3: return 60.0;
    case 5: return 10.0;
    case 8: return 60.0;
    default: return 0.0;  // unbounded
  }
}

inline CheckResult run_check(int id) {
  static const char* names[9] = {
      "tower reproduction",    "bracket convergence", "weighted tower",
      "rescaling constant",    "subgroup census",     "spectral heights",
      "operator heights",      "bounded enumeration", "height identities"};
  if (id < 1 || id > 9) fail(ErrorCode::InvalidInput, "check id must be 1..9");
  CheckResult res;
  res.id = id;
  res.name = names[id - 1];
  selfdetail::Reporter r;
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: selfdetail::check_tower_reproduction(r); break;
      case 2: selfdetail::check_bracket_convergence(r); break;
      case 3: selfdetail::check_weighted_tower(r); break;
      case 4: selfdetail::check_rescaling_constant(r); break;
      case 5: selfdetail::check_subgroup_census(r); break;
      case 6: selfdetail::check_spectral_heights(r); break;
      case 7: selfdetail::check_operator_heights(r); break;
      case 8: selfdetail::check_bounded_enumeration(r); break;
      case 9: selfdetail::check_height_identities(r); break;
    }
    res.pass = r.pass();
    res.detail = r.detail();
  } catch (const Error& e) {
    res.pass = false;
    res.detail = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  double budget = check_time_budget(id);
  if (res.pass && budget > 0.0 && res.seconds > budget) {
    res.pass = false;
    std::ostringstream os;
    os << "time budget exceeded: " << res.seconds << " s > " << budget << " s";
    res.detail = os.str();
  }
  return res;
}

inline std::vector<CheckResult> run_checks(bool quick) {
  std::vector<int> ids = quick ? std::vector<int>{1, 4, 6}
                               : std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<CheckResult> out;
  for (int id : ids) out.push_back(run_check(id));
  return out;
}

}  // namespace northcott
