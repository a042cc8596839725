#pragma once

// Kummer-style tower construction. Levels are chosen greedily: each level
// degree is the smallest admissible prime, each level prime p_i is the
// smallest prime whose log lands in the certified window
// [threshold_i, threshold_i + log 2], and q_i is the smallest prime strictly
// between p_i and 2 p_i. All window decisions are exact (log-space
// comparisons in the certified value algebra), never float cutoffs.
//
// threshold_i = N * d_i * c / w(N * D_i), where D_i is d_i when the weight
// has a positive limit and the running product of the level degrees when the
// weight vanishes at infinity. For weights outside the log-linear algebra
// (square-root growth, say) the threshold is an exact Quantity ratio rather
// than a plain log-linear form.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "heights.hpp"
#include "loglinear.hpp"
#include "primes.hpp"
#include "radical.hpp"
#include "value.hpp"
#include "weights.hpp"

namespace northcott {

enum class WitnessVariant { NthRoot, ProductRoot };

struct LevelRecord {
  unsigned long index = 0;  // 1-based level number
  mpz_class d;              // level degree (prime)
  mpz_class p;              // lower window prime
  mpz_class q;              // companion prime, p < q < 2p
  mpz_class big_d;          // D_i: d_i, or the product of degrees so far
  Quantity threshold_log = Quantity::from_rational(0);
};

struct TowerSpec {
  LogLinear c;                       // target constant, > 0
  unsigned long n = 1;               // root index applied to every witness
  Weight w = Weight::constant(1);
  mpz_class d0 = 1;                  // regularity floor for the first degree
  bool d1_above_n = false;           // optionally force d_1 > n
  std::vector<LevelRecord> levels;
};

// One boolean per construction inequality, re-derived from scratch.
struct LevelCheck {
  bool degree_floor = false;      // d_1 >= d0 (and d_1 prime)
  bool base_threshold = false;    // threshold_1 >= log 2
  bool threshold_gap = false;     // threshold_{i-1} + log 4 <= threshold_i
  bool prime_window = false;      // log p_i in [threshold_i, threshold_i + log 2]
  bool companion_window = false;  // p_i < q_i < 2 p_i, q_i prime
  bool decay_proxy = false;       // vanishing weights: w(N D_i) i^2 < w(N D_{i-1})
  bool all() const {
    return degree_floor && base_threshold && threshold_gap && prime_window &&
           companion_window && decay_proxy;
  }
};

struct Witness {
  RadicalMonomial element;
  LogLinear height;           // unweighted height of the element
  Quantity weighted_height;   // w(deg element) * height
};

namespace towerdetail {

inline Quantity log2_quantity() {
  return Quantity::from_loglinear(LogLinear::log_of_prime(2));
}

inline Quantity log4_quantity() {
  return Quantity::from_loglinear(LogLinear::log_of_prime(2, 2));
}

inline Quantity threshold_value(const LogLinear& c, unsigned long n,
                                const mpz_class& d, const mpz_class& big_d,
                                const Weight& w) {
  Quantity t = Quantity::from_loglinear(c) * mpq_class(mpz_class(n) * d);
  return t / w.eval(mpz_class(n) * big_d);
}

// Least integer >= lo passing `ok`, assuming `ok` is monotone (false then
// true) on [lo, inf). Exponential bracketing plus binary search.
template <typename Pred>
std::optional<mpz_class> least_admissible(mpz_class lo, const Pred& ok) {
  if (ok(lo)) return lo;
  const mpz_class cap = mpz_class(1) << 200;
  mpz_class bad = lo, good;
  mpz_class step = 1;
  for (;;) {
    mpz_class cand = bad + step;
    if (cand > cap) return std::nullopt;
    if (ok(cand)) {
      good = cand;
      break;
    }
    bad = cand;
    step *= 2;
  }
  while (bad + 1 < good) {
    mpz_class mid = bad + (good - bad) / 2;
    if (ok(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace towerdetail

inline TowerSpec build_tower(const LogLinear& c, unsigned long n, const Weight& w,
                             unsigned long levels, bool d1_above_n = false) {
  if (n < 1) fail(ErrorCode::InvalidInput, "the root index must be positive");
  if (c.sign() <= 0) fail(ErrorCode::InvalidInput, "the target constant must be positive");
  Weight::Classification cls = w.classify_for_explicit(n);
  if (!cls.condition1 || !cls.condition2) {
    fail(ErrorCode::WeightIneligible,
         "the weight fails the decay or regularity condition for explicit towers");
  }
  const bool vanishing = cls.limit.kind == LimitKind::ToZero;

  TowerSpec spec;
  spec.c = c;
  spec.n = n;
  spec.w = w;
  spec.d0 = cls.d0;
  spec.d1_above_n = d1_above_n;

  const Quantity log2q = towerdetail::log2_quantity();
  const Quantity log4q = towerdetail::log4_quantity();
  const mpz_class nz(n);

  mpz_class prod = 1;  // product of the degrees chosen so far
  mpz_class d_prev = 0;
  std::optional<Quantity> t_prev;
  std::optional<Quantity> w_prev;  // w(N D_{i-1}), for the decay proxy

  for (unsigned long i = 1; i <= levels; ++i) {
    mpz_class d_min = i == 1 ? spec.d0 : mpz_class(d_prev + 1);
    if (d_min < 2) d_min = 2;
    if (i == 1 && d1_above_n && d_min <= nz) d_min = nz + 1;

    auto admits = [&](const mpz_class& d) -> bool {
      mpz_class big_d = vanishing ? mpz_class(prod * d) : d;
      Quantity t = towerdetail::threshold_value(c, n, d, big_d, w);
      Quantity bound = t_prev ? *t_prev + log4q : log2q;
      if (compare(t, bound) == Cmp::Less) return false;
      if (vanishing && w_prev) {
        Quantity lhs = w.eval(nz * big_d) * mpq_class(mpz_class(i) * mpz_class(i));
        if (compare(lhs, *w_prev) != Cmp::Less) return false;
      }
      return true;
    };

    auto least = towerdetail::least_admissible(d_min, admits);
    if (!least) {
      fail(i == 1 ? ErrorCode::N0Violation : ErrorCode::BudgetExceeded,
           "no admissible level degree below the search cap");
    }
    mpz_class d = is_prime(*least) ? *least : next_prime_above(*least);
    // The admissibility conditions are monotone on the regular tail, so the
    // prime jump preserves them; re-check defensively all the same.
    for (int guard = 0; !admits(d); ++guard) {
      if (guard > 1000) fail(ErrorCode::BudgetExceeded, "level degree search stalled");
      d = next_prime_above(d);
    }

    mpz_class big_d = vanishing ? mpz_class(prod * d) : d;
    Quantity t = towerdetail::threshold_value(c, n, d, big_d, w);
    auto p = smallest_prime_in_exp(t, t + log2q, false, false);
    if (!p) fail(ErrorCode::Undecidable, "no prime found in the doubling window");
    mpz_class q = next_prime_above(*p);
    if (q >= 2 * *p) fail(ErrorCode::Undecidable, "no companion prime below 2p");

    LevelRecord rec;
    rec.index = i;
    rec.d = d;
    rec.p = *p;
    rec.q = q;
    rec.big_d = big_d;
    rec.threshold_log = t;
    spec.levels.push_back(rec);

    prod *= d;
    d_prev = d;
    t_prev = t;
    w_prev = w.eval(nz * big_d);
  }
  return spec;
}

inline LevelCheck verify_level(const TowerSpec& spec, unsigned long i) {
  if (i < 1 || i > spec.levels.size()) fail(ErrorCode::InvalidInput, "no such level");
  Weight::Classification cls = spec.w.classify_for_explicit(spec.n);
  const bool vanishing = cls.limit.kind == LimitKind::ToZero;
  const Quantity log2q = towerdetail::log2_quantity();
  const Quantity log4q = towerdetail::log4_quantity();
  const mpz_class nz(spec.n);

  // Recompute D_j and thresholds from the recorded degree sequence alone.
  auto recompute = [&](unsigned long j) -> Quantity {
    mpz_class prod = 1;
    for (unsigned long k = 0; k < j; ++k) prod *= spec.levels[k].d;
    mpz_class big_d = vanishing ? prod : spec.levels[j - 1].d;
    return towerdetail::threshold_value(spec.c, spec.n, spec.levels[j - 1].d, big_d, spec.w);
  };

  const LevelRecord& lvl = spec.levels[i - 1];
  LevelCheck out;
  out.degree_floor = is_prime(spec.levels[0].d) && spec.levels[0].d >= spec.d0 &&
                     is_prime(lvl.d);
  Quantity t1 = recompute(1);
  out.base_threshold = compare(t1, log2q) != Cmp::Less;
  Quantity ti = i == 1 ? t1 : recompute(i);
  if (i == 1) {
    out.threshold_gap = true;
  } else {
    out.threshold_gap = spec.levels[i - 2].d < lvl.d &&
                        compare(recompute(i - 1) + log4q, ti) != Cmp::Greater;
  }
  if (is_prime(lvl.p)) {
    Quantity logp = Quantity::from_loglinear(LogLinear::log_of_prime(lvl.p));
    out.prime_window =
        compare(logp, ti) != Cmp::Less && compare(logp, ti + log2q) != Cmp::Greater;
  }
  out.companion_window = is_prime(lvl.q) && lvl.p < lvl.q && lvl.q < 2 * lvl.p;
  if (!vanishing || i == 1) {
    out.decay_proxy = true;
  } else {
    mpz_class prod = 1;
    for (unsigned long k = 0; k < i; ++k) prod *= spec.levels[k].d;
    mpz_class prod_prev = prod / spec.levels[i - 1].d;
    Quantity lhs = spec.w.eval(nz * prod) * mpq_class(mpz_class(i) * mpz_class(i));
    out.decay_proxy = compare(lhs, spec.w.eval(nz * prod_prev)) == Cmp::Less;
  }
  return out;
}

inline Witness witness(const TowerSpec& spec, unsigned long i, WitnessVariant variant) {
  if (i < 1 || i > spec.levels.size()) fail(ErrorCode::InvalidInput, "no such level");
  Weight::Classification cls = spec.w.classify_for_explicit(spec.n);
  const bool vanishing = cls.limit.kind == LimitKind::ToZero;
  if (variant == WitnessVariant::NthRoot && vanishing) {
    fail(ErrorCode::VariantMismatch,
         "vanishing weights call for the accumulated product witness");
  }
  if (variant == WitnessVariant::ProductRoot && !vanishing) {
    fail(ErrorCode::VariantMismatch,
         "weights with a positive limit call for the single-level witness");
  }

  auto level_radical = [&](unsigned long j) {
    const LevelRecord& lvl = spec.levels[j - 1];
    if (!lvl.d.fits_slong_p()) fail(ErrorCode::BudgetExceeded, "level degree too large");
    return make_radical(lvl.p, lvl.q, lvl.d.get_si());
  };

  RadicalMonomial base = RadicalMonomial::one();
  if (variant == WitnessVariant::NthRoot) {
    base = level_radical(i);
  } else {
    for (unsigned long j = 1; j <= i; ++j) base = base * level_radical(j);
  }
  RadicalMonomial element = spec.n == 1 ? base : base.nth_root(spec.n);

  Witness out{element, weil_height(element), weighted_height(element, spec.w)};
  return out;
}

}  // namespace northcott
