#pragma once

// Bracketing machinery for the infimum of weighted heights over a tower.
//
//   - silverman_lower_bound: the discriminant-based height lower bound
//     (1/(2(m-1))) * (log_norm_disc / (m * deg_base) - log m).
//   - ramification_exponent: the per-prime valuation ledger accumulated down
//     a tower level; both window primes ramify with exponent
//     (product of earlier degrees) * (d_i - 1) * s.
//   - tower_lower_bound: the analytic specialization of the bound to a tower
//     level, plus its weighted continuation by limit class.
//   - northcott_bracket: per-level (lower, upper) pairs and the assembled
//     certified envelope estimates.
//   - enumerate_bounded: the complete list of algebraic numbers of degree at
//     most D and height strictly below B, as minimal polynomials.
//   - weight_from_family: the reciprocal staircase weight built from
//     per-degree minimal heights of a sample family.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "heights.hpp"
#include "loglinear.hpp"
#include "polynomial.hpp"
#include "primes.hpp"
#include "tower.hpp"
#include "value.hpp"
#include "weights.hpp"

namespace northcott {

// ---------------------------------------------------------------------------
// Discriminant ledger

struct DiscriminantLedger {
  std::map<mpz_class, mpz_class> exponents;  // prime -> valuation lower bound
};

inline LogLinear ledger_log_norm(const DiscriminantLedger& ledger) {
  LogLinear out;
  for (const auto& [p, e] : ledger.exponents) {
    if (e < 0) fail(ErrorCode::InvalidInput, "ledger exponents must be nonnegative");
    if (e > 0) out += LogLinear::log_of_prime(p, mpq_class(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The discriminant height bound

inline Quantity silverman_lower_bound(const mpz_class& m, const LogLinear& log_norm_disc,
                                      const mpz_class& deg_base) {
  if (m < 2) fail(ErrorCode::InvalidDegree, "the bound needs degree at least 2");
  if (deg_base < 1) fail(ErrorCode::InvalidInput, "the base degree must be positive");
  if (log_norm_disc.sign() < 0) {
    fail(ErrorCode::InvalidInput, "the discriminant norm log must be nonnegative");
  }
  LogLinear t = log_norm_disc;
  t *= mpq_class(mpz_class(1), m * deg_base);
  t -= LogLinear::log_of_rational(mpq_class(m));
  t *= mpq_class(mpz_class(1), 2 * (m - 1));
  return Quantity::from_loglinear(t);
}

inline DiscriminantLedger ramification_exponent(const TowerSpec& spec, unsigned long i,
                                                const mpz_class& s) {
  if (i < 1 || i > spec.levels.size()) fail(ErrorCode::InvalidInput, "no such level");
  if (s < 1) fail(ErrorCode::InvalidInput, "the relative degree must be positive");
  mpz_class base_degree = 1;
  for (unsigned long j = 0; j + 1 < i; ++j) base_degree *= spec.levels[j].d;
  const LevelRecord& lvl = spec.levels[i - 1];
  mpz_class e = base_degree * (lvl.d - 1) * s;
  DiscriminantLedger out;
  out.exponents[lvl.p] = e;
  out.exponents[lvl.q] = e;
  return out;
}

// ---------------------------------------------------------------------------
// Level lower bounds

struct TowerLowerBound {
  Quantity unweighted = Quantity::from_rational(0);
  Quantity weighted = Quantity::from_rational(0);
};

namespace estdetail {

// Certified infimum of w over the integer range [lo, hi]: beyond the
// regularity floor the weight is monotone, so endpoints suffice; below it
// every integer is inspected.
inline Quantity weight_infimum(const Weight& w, const mpz_class& lo, const mpz_class& hi,
                               const mpz_class& floor_d0) {
  if (lo > hi) fail(ErrorCode::InvalidInput, "empty degree range");
  std::vector<mpz_class> candidates;
  mpz_class scan_hi = hi < floor_d0 ? hi : floor_d0;
  if (scan_hi - lo > 200000) {
    fail(ErrorCode::BudgetExceeded, "weight infimum scan range too large");
  }
  for (mpz_class x = lo; x <= scan_hi; ++x) candidates.push_back(x);
  mpz_class tail_lo = lo > floor_d0 ? lo : floor_d0;
  if (tail_lo <= hi) {
    candidates.push_back(tail_lo);
    candidates.push_back(hi);
  }
  Quantity best = w.eval(candidates.front());
  for (size_t k = 1; k < candidates.size(); ++k) {
    Quantity cand = w.eval(candidates[k]);
    if (compare(cand, best) == Cmp::Less) best = cand;
  }
  return best;
}

}  // namespace estdetail

inline TowerLowerBound tower_lower_bound(const TowerSpec& spec, unsigned long i,
                                         const mpz_class& s) {
  if (i < 1 || i > spec.levels.size()) fail(ErrorCode::InvalidInput, "no such level");
  if (s < 1 || s > mpz_class(spec.n)) {
    fail(ErrorCode::InvalidInput, "the relative degree must lie in [1, N]");
  }
  const LevelRecord& lvl = spec.levels[i - 1];
  if (lvl.d <= mpz_class(spec.n)) {
    fail(ErrorCode::DichotomyUnavailable,
         "the degree dichotomy needs the level degree to exceed the root index");
  }
  Weight::Classification cls = spec.w.classify_for_explicit(spec.n);
  const mpz_class nz(spec.n);
  mpz_class sd = s * lvl.d;

  Quantity core = Quantity::from_loglinear(spec.c) * mpq_class(2 * nz * (lvl.d - 1));
  core = core / spec.w.eval(nz * lvl.big_d);
  Quantity logsd = Quantity::from_loglinear(LogLinear::log_of_rational(mpq_class(sd)));
  Quantity unweighted = (core - logsd) * mpq_class(mpz_class(1), 2 * (sd - 1));

  Quantity factor = Quantity::from_rational(1);
  switch (cls.limit.kind) {
    case LimitKind::ToZero:
    case LimitKind::ToInfinity:
      // big_d is the degree-range endpoint matching the monotone direction.
      factor = spec.w.eval(s * lvl.big_d);
      break;
    case LimitKind::ToPositiveFinite: {
      mpz_class prod = 1;
      for (unsigned long j = 0; j < i; ++j) prod *= spec.levels[j].d;
      factor = estdetail::weight_infimum(spec.w, sd, s * prod, cls.d0);
      break;
    }
  }
  return TowerLowerBound{unweighted, unweighted * factor};
}

// ---------------------------------------------------------------------------
// Bracket assembly

struct NorBracketLevel {
  unsigned long index = 0;
  Quantity lower = Quantity::from_rational(0);
  Quantity upper = Quantity::from_rational(0);
};

struct NorBracket {
  std::vector<NorBracketLevel> levels;
  Quantity lower_estimate = Quantity::from_rational(0);
  Quantity upper_estimate = Quantity::from_rational(0);
};

inline NorBracket northcott_bracket(const TowerSpec& spec, unsigned long levels = 0) {
  unsigned long use = spec.levels.size();
  if (levels != 0 && levels < use) use = levels;
  Weight::Classification cls = spec.w.classify_for_explicit(spec.n);
  WitnessVariant variant = cls.limit.kind == LimitKind::ToZero ? WitnessVariant::ProductRoot
                                                               : WitnessVariant::NthRoot;
  NorBracket out;
  for (unsigned long i = 1; i <= use; ++i) {
    if (spec.levels[i - 1].d <= mpz_class(spec.n)) continue;
    std::optional<Quantity> lower;
    for (mpz_class s = 1; s <= mpz_class(spec.n); ++s) {
      Quantity cand = tower_lower_bound(spec, i, s).weighted;
      if (!lower || compare(cand, *lower) == Cmp::Less) lower = cand;
    }
    Quantity upper = witness(spec, i, variant).weighted_height;
    out.levels.push_back(NorBracketLevel{i, *lower, upper});
  }
  if (out.levels.empty()) {
    fail(ErrorCode::DichotomyUnavailable, "no level admits the degree dichotomy");
  }
  out.lower_estimate = out.levels.front().lower;
  out.upper_estimate = out.levels.front().upper;
  for (const auto& lvl : out.levels) {
    if (compare(lvl.lower, out.lower_estimate) == Cmp::Greater) out.lower_estimate = lvl.lower;
    if (compare(lvl.upper, out.upper_estimate) == Cmp::Less) out.upper_estimate = lvl.upper;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded-height enumeration

struct BoundedElement {
  IntPolynomial min_poly;
  unsigned long root_count = 0;  // = deg, all conjugates share the height
};

struct EnumerationResult {
  std::vector<BoundedElement> elements;
  unsigned long total = 0;  // numbers counted with multiplicity deg
};

namespace estdetail {

// Irreducible minimal polynomials of the roots of unity of degree <= 4,
// ascending coefficients. Everything with Mahler measure exactly 1 and
// degree <= 4 is x or one of these (Kronecker).
inline const std::vector<std::vector<long>>& unit_circle_polys() {
  static const std::vector<std::vector<long>> table = {
      {0, 1},            // x
      {-1, 1},           // x - 1
      {1, 1},            // x + 1
      {1, 1, 1},         // x^2 + x + 1
      {1, 0, 1},         // x^2 + 1
      {1, -1, 1},        // x^2 - x + 1
      {1, 1, 1, 1, 1},   // x^4 + x^3 + x^2 + x + 1
      {1, 0, 0, 0, 1},   // x^4 + 1
      {1, -1, 1, -1, 1}, // x^4 - x^3 + x^2 - x + 1
      {1, 0, -1, 0, 1},  // x^4 - x^2 + 1
  };
  return table;
}

inline bool is_unit_circle_poly(const IntPolynomial& f) {
  for (const auto& entry : unit_circle_polys()) {
    if (f.coeffs().size() != entry.size()) continue;
    bool same = true;
    for (size_t k = 0; k < entry.size(); ++k) {
      if (f.coeffs()[k] != entry[k]) {
        same = false;
        break;
      }
    }
    if (same) return true;
  }
  return false;
}

}  // namespace estdetail

inline EnumerationResult enumerate_bounded(unsigned long max_degree, const Quantity& bound) {
  if (max_degree < 1) fail(ErrorCode::InvalidInput, "the degree cap must be positive");
  if (max_degree > 4) fail(ErrorCode::BudgetExceeded, "degree caps above 4 are not supported");
  if (compare(bound, Quantity::from_rational(1)) == Cmp::Greater) {
    fail(ErrorCode::BudgetExceeded, "height bounds above 1 are not supported");
  }
  EnumerationResult out;
  if (compare(bound, Quantity::from_rational(0)) != Cmp::Greater) return out;

  const unsigned long kCandidateCap = 2000000;

  for (unsigned long g = 1; g <= max_degree; ++g) {
    // Coefficient box: |a_i| <= binom(g, i) * e^{gB}; the outer coefficients
    // obey the tighter |a_0|, |a_g| <= e^{gB} (both divide into the measure).
    MpfrInterval gb = (bound * mpq_class(static_cast<long>(g))).eval(256);
    MpfrInterval egb = iv_exp(gb);
    const double gb_lo = gb.lo_d();
    const double gb_hi = gb.hi_d();
    std::vector<mpz_class> cap(g + 1);
    for (unsigned long k = 0; k <= g; ++k) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), g, k);
      cap[k] = iv_mul(egb, MpfrInterval::from_z(binom, 256)).ceil_hi();
    }
    cap[0] = egb.ceil_hi();
    cap[g] = egb.ceil_hi();

    mpz_class tuple_count = cap[g];
    for (unsigned long k = 0; k < g; ++k) tuple_count *= 2 * cap[k] + 1;
    if (tuple_count > kCandidateCap) {
      fail(ErrorCode::BudgetExceeded, "coefficient box too large to enumerate");
    }

    std::vector<mpz_class> coeffs(g + 1);
    std::function<void(unsigned long)> walk = [&](unsigned long pos) {
      if (pos == g + 1) {
        IntPolynomial f(coeffs);
        if (f.content() != 1) return;
        if (g >= 2 && coeffs[0] == 0) return;  // divisible by x
        if (g == 1) {
          // Exact path: the number is -a_0/a_1 in lowest terms.
          mpz_class m0 = abs(coeffs[0]);
          mpz_class m1 = abs(coeffs[1]);
          mpz_class mmax = m0 > m1 ? m0 : m1;
          Quantity h = Quantity::from_loglinear(
              LogLinear::log_of_rational(mpq_class(mmax)));
          if (compare(h, bound) == Cmp::Less) {
            out.elements.push_back(BoundedElement{f, 1});
            out.total += 1;
          }
          return;
        }
        if (!is_irreducible_over_q(f)) return;
        if (estdetail::is_unit_circle_poly(f)) {
          out.elements.push_back(BoundedElement{f, g});
          out.total += g;
          return;
        }
        // The height of every root is (log M)/g; decide log M against g*B.
        for (double tol : {1e-9, 1e-13}) {
          MahlerEstimate est = mahler_measure(f, tol);
          if (est.upper < gb_lo) {
            out.elements.push_back(BoundedElement{f, g});
            out.total += g;
            return;
          }
          if (est.lower > gb_hi) return;
        }
        fail(ErrorCode::Undecidable, "Mahler measure tangent to the height bound");
      } else if (pos == g) {
        for (mpz_class a = 1; a <= cap[g]; ++a) {
          coeffs[g] = a;
          walk(pos + 1);
        }
      } else {
        for (mpz_class a = -cap[pos]; a <= cap[pos]; ++a) {
          coeffs[pos] = a;
          walk(pos + 1);
        }
      }
    };
    walk(0);
  }

  std::sort(out.elements.begin(), out.elements.end(),
            [](const BoundedElement& a, const BoundedElement& b) {
              if (a.min_poly.degree() != b.min_poly.degree()) {
                return a.min_poly.degree() < b.min_poly.degree();
              }
              return a.min_poly.coeffs() < b.min_poly.coeffs();
            });
  return out;
}

// ---------------------------------------------------------------------------
// Weight from a family of heights

struct FamilySample {
  mpz_class degree;
  LogLinear height;
};

enum class FamilyCase { NorInfinite, NorZero };

struct FamilyWeightReport {
  Weight weight = Weight::constant(1);
  bool heights_at_least_one = false;  // h^w(sample) >= 1 for every sample
  bool equality_on_minima = false;    // h^w = 1 on the per-degree minima
};

inline FamilyWeightReport weight_from_family(const std::vector<FamilySample>& samples,
                                             FamilyCase kase) {
  if (samples.empty()) fail(ErrorCode::InvalidInput, "no samples");
  std::map<mpz_class, LogLinear> minima;
  for (const auto& s : samples) {
    auto it = minima.find(s.degree);
    if (it == minima.end()) {
      minima.emplace(s.degree, s.height);
    } else if (ll_compare(s.height, it->second) == Cmp::Less) {
      it->second = s.height;
    }
  }
  if (minima.size() < 2) {
    fail(ErrorCode::DegreesBounded,
         "the construction needs samples of unboundedly many degrees");
  }
  // The per-degree minima must trend the right way for the requested case.
  const LogLinear* prev = nullptr;
  for (const auto& [d, h] : minima) {
    (void)d;
    if (prev) {
      Cmp c = ll_compare(h, *prev);
      if (kase == FamilyCase::NorInfinite && c == Cmp::Less) {
        fail(ErrorCode::InvalidInput, "per-degree minima must be non-decreasing");
      }
      if (kase == FamilyCase::NorZero && c == Cmp::Greater) {
        fail(ErrorCode::InvalidInput, "per-degree minima must be non-increasing");
      }
    }
    prev = &h;
  }

  FamilyWeightReport out;
  out.weight = Weight::staircase(minima, StairTail::HoldLast,
                                 /*unit_below_first=*/kase == FamilyCase::NorZero);
  out.heights_at_least_one = true;
  out.equality_on_minima = true;
  const Quantity one = Quantity::from_rational(1);
  for (const auto& s : samples) {
    Quantity hw = out.weight.eval(s.degree) * Quantity::from_loglinear(s.height);
    Cmp c = compare(hw, one);
    if (c == Cmp::Less) out.heights_at_least_one = false;
    if (s.height == minima.at(s.degree) && c != Cmp::Equal) {
      out.equality_on_minima = false;
    }
  }
  return out;
}

}  // namespace northcott
