#pragma once
// Heights of structured matrices.
//
// Three matrix shapes carry exact spectral data:
//   - RationalDense:   a square matrix over Q;
//   - RadicalDiagonal: a diagonal matrix whose entries are radical monomials;
//   - CompanionBlock:  the direct sum of the 1x1 identity and the companion
//                      matrix of x^(n-1) - alpha for a radical monomial alpha.
//
// The spectral height of a matrix is the projective height of its eigenvalue
// tuple; it is invariant under conjugation and under scaling by a nonzero
// rational. Because the similarity class of a matrix does not pin down a
// single field of definition, degrees enter only as a bracket: the degree of
// the eigenvalue tuple divided by n! rounds up to a lower bound, and the
// entry degree of the given representative is an upper bound. Weighted
// spectral heights therefore come as value brackets {w(k) * hs} over that
// degree range, collapsed to a point whenever the range or the height is
// degenerate.
//
// Operator heights (sup of h2(Ax) - h2(x)) are computed in closed form for
// diagonal matrices -- w(deg A) times the projective height of the diagonal
// tuple -- and bounded from below by finite probe sets for general rational
// matrices. Two per-level checks compare spectral and operator heights of
// matrices assembled from a tower's level data against the tower's own
// threshold bracket.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "northcott/errors.hpp"
#include "northcott/estimator.hpp"
#include "northcott/heights.hpp"
#include "northcott/loglinear.hpp"
#include "northcott/polynomial.hpp"
#include "northcott/radical.hpp"
#include "northcott/tower.hpp"
#include "northcott/value.hpp"
#include "northcott/weights.hpp"

namespace northcott {

// ---------------------------------------------------------------------------
// Matrix shapes

struct RationalDense {
  std::vector<std::vector<mpq_class>> rows;  // square, row major
};

struct RadicalDiagonal {
  std::vector<RadicalMonomial> entries;  // diagonal entries, all nonzero
};

// 1 (+) companion(x^(n-1) - alpha): an n x n matrix with eigenvalues 1 and
// the (n-1)-th roots alpha^(1/(n-1)) * zeta_{n-1}^j, j = 0..n-2.
struct CompanionBlock {
  unsigned long n = 2;
  RadicalMonomial alpha = RadicalMonomial::one();
};

using StructuredMatrix = std::variant<RationalDense, RadicalDiagonal, CompanionBlock>;

namespace matdetail {

inline void check_dense(const RationalDense& m) {
  if (m.rows.empty()) fail(ErrorCode::InvalidInput, "matrix must be nonempty");
  for (const auto& row : m.rows) {
    if (row.size() != m.rows.size())
      fail(ErrorCode::InvalidInput, "matrix must be square");
  }
}

inline void check_diagonal(const RadicalDiagonal& m) {
  if (m.entries.empty()) fail(ErrorCode::InvalidInput, "matrix must be nonempty");
}

inline void check_block(const CompanionBlock& b) {
  if (b.n < 2) fail(ErrorCode::InvalidDegree, "companion block needs size at least 2");
}

inline bool dense_is_zero(const RationalDense& m) {
  for (const auto& row : m.rows)
    for (const auto& e : row)
      if (e != 0) return false;
  return true;
}

// Exact characteristic polynomial det(xI - A) by the Faddeev-LeVerrier
// recurrence; coefficients ascending, monic of degree n.
inline std::vector<mpq_class> char_poly(const RationalDense& A) {
  check_dense(A);
  const std::size_t n = A.rows.size();
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> B = A.rows;
  for (std::size_t k = 1; k <= n; ++k) {
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += B[i][i];
    c[n - k] = -tr / mpq_class(static_cast<unsigned long>(k));
    if (k == n) break;
    // B <- A * (B + c[n-k] * I)
    std::vector<std::vector<mpq_class>> S = B;
    for (std::size_t i = 0; i < n; ++i) S[i][i] += c[n - k];
    std::vector<std::vector<mpq_class>> next(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += A.rows[i][l] * S[l][j];
        next[i][j] = acc;
      }
    B = std::move(next);
  }
  return c;
}

// Clear denominators to get an integer polynomial with the same roots.
inline IntPolynomial integer_model(const std::vector<mpq_class>& c) {
  mpz_class lcm_den = 1;
  for (const auto& q : c) {
    mpz_class den(q.get_den());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> z;
  z.reserve(c.size());
  for (const auto& q : c) {
    mpq_class s = q * mpq_class(lcm_den);
    s.canonicalize();
    z.push_back(mpz_class(s.get_num()));
  }
  return IntPolynomial(std::move(z));
}

}  // namespace matdetail

inline unsigned long matrix_dim(const StructuredMatrix& A) {
  if (const auto* m = std::get_if<RationalDense>(&A)) {
    matdetail::check_dense(*m);
    return m->rows.size();
  }
  if (const auto* m = std::get_if<RadicalDiagonal>(&A)) {
    matdetail::check_diagonal(*m);
    return m->entries.size();
  }
  const auto& b = std::get<CompanionBlock>(A);
  matdetail::check_block(b);
  return b.n;
}

// ---------------------------------------------------------------------------
// Eigenvalue tuples
//
// The nonzero eigenvalues of a supported matrix, with multiplicity, as exact
// radical monomials. Zero eigenvalues are dropped: they never contribute to a
// projective height (a vanishing coordinate attains neither the minimal
// valuation nor the maximal modulus), and a monomial is nonzero by
// construction. An empty result means every eigenvalue vanishes.

inline std::vector<RadicalMonomial> eigentuple(const StructuredMatrix& A) {
  std::vector<RadicalMonomial> out;

  if (const auto* m = std::get_if<RationalDense>(&A)) {
    matdetail::check_dense(*m);
    const std::size_t n = m->rows.size();
    std::vector<mpq_class> c = matdetail::char_poly(*m);
    IntPolynomial f = matdetail::integer_model(c);
    auto factors = factor_over_q(f);
    bool all_linear = true;
    for (const auto& [g, mult] : factors)
      if (g.degree() > 1) all_linear = false;
    if (all_linear) {
      for (const auto& [g, mult] : factors) {
        if (g.degree() != 1) continue;  // content factors cannot appear
        mpq_class root(-g.coeffs()[0], g.coeffs()[1]);
        root.canonicalize();
        if (root == 0) continue;
        for (unsigned k = 0; k < mult; ++k)
          out.push_back(RadicalMonomial::from_rational(root));
      }
      return out;
    }
    if (n != 2)
      fail(ErrorCode::UnsupportedSpectrum,
           "matrices beyond 2x2 need rational eigenvalues");
    // Irreducible quadratic x^2 - t x + det. The eigenvalue ratio r satisfies
    // r + 1/r = (t^2 - 2 det)/det; the tuple stays in the monomial catalog
    // exactly when that value forces r to be -1 or a primitive root of unity
    // of order 3, 4 or 6.
    mpq_class t = -c[1];
    mpq_class det = c[0];
    mpq_class u = (t * t - 2 * det) / det;
    u.canonicalize();
    out.push_back(RadicalMonomial::one());
    if (u == -2) {
      out.push_back(RadicalMonomial::from_rational(-1));
    } else if (u == -1) {
      out.push_back(RadicalMonomial::root_of_unity(3, 1));
    } else if (u == 0) {
      out.push_back(RadicalMonomial::root_of_unity(4, 1));
    } else if (u == 1) {
      out.push_back(RadicalMonomial::root_of_unity(6, 1));
    } else {
      fail(ErrorCode::UnsupportedSpectrum,
           "eigenvalue ratio is neither rational nor a root of unity");
    }
    return out;
  }

  if (const auto* m = std::get_if<RadicalDiagonal>(&A)) {
    matdetail::check_diagonal(*m);
    return m->entries;
  }

  const auto& b = std::get<CompanionBlock>(A);
  matdetail::check_block(b);
  out.push_back(RadicalMonomial::one());
  RadicalMonomial beta = b.n == 2 ? b.alpha : b.alpha.nth_root(b.n - 1);
  for (unsigned long j = 0; j + 1 < b.n; ++j) {
    RadicalMonomial lambda = RadicalMonomial::root_of_unity(b.n - 1, j) * beta;
    // Each listed eigenvalue must be a root of the companion factor
    // x^(n-1) - alpha; verify symbolically.
    if (!(lambda.pow_int(static_cast<long>(b.n - 1)) == b.alpha))
      fail(ErrorCode::InvalidInput, "companion eigenvalue fails its defining equation");
    out.push_back(lambda);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projective height of a monomial tuple
//
// Every archimedean embedding of a radical monomial has the same modulus, so
// the height of a tuple of monomials reduces to an exact log-linear form:
//   sum_p (-min_i v_p(a_i)) log p  +  max_i log|a_i|,
// where v_p collects the radical exponents together with the valuation of the
// scalar. A single-entry tuple gets height 0 (product formula), as does the
// empty tuple standing for the zero point.

inline LogLinear monomial_tuple_height(const std::vector<RadicalMonomial>& a) {
  LogLinear h;
  if (a.empty()) return h;
  std::vector<RadicalMonomial::Exponents> vals;
  vals.reserve(a.size());
  std::set<mpz_class> primes;
  for (const auto& m : a) {
    vals.push_back(m.full_exponents());
    for (const auto& [p, e] : vals.back()) primes.insert(p);
  }
  for (const auto& p : primes) {
    bool first = true;
    mpq_class mn;
    for (const auto& v : vals) {
      auto it = v.find(p);
      mpq_class e = it == v.end() ? mpq_class(0) : it->second;
      if (first || e < mn) mn = e;
      first = false;
    }
    if (mn != 0) h += LogLinear::log_of_prime(p, -mn);
  }
  LogLinear arch = a[0].log_abs();
  for (std::size_t i = 1; i < a.size(); ++i) {
    LogLinear cand = a[i].log_abs();
    if (ll_compare(cand, arch) == Cmp::Greater) arch = cand;
  }
  h += arch;
  return h;
}

namespace matdetail {

// Degree of the field generated by a list of monomials. Deduplicates first;
// a single nontrivial generator is handled by its own exact degree (which
// covers mixed root-of-unity/radical elements the general compositum
// machinery rejects).
inline unsigned long generators_degree(const std::vector<RadicalMonomial>& gens) {
  std::vector<RadicalMonomial> distinct;
  for (const auto& g : gens) {
    if (g.is_rational()) continue;
    bool seen = false;
    for (const auto& d : distinct)
      if (d == g) seen = true;
    if (!seen) distinct.push_back(g);
  }
  if (distinct.empty()) return 1;
  if (distinct.size() == 1) return distinct[0].degree();
  return compositum_degree(distinct);
}

}  // namespace matdetail

// Degree over Q of the field generated by the ratios of the tuple entries
// (the field of definition of the corresponding projective point).
inline unsigned long eigentuple_degree(const std::vector<RadicalMonomial>& t) {
  if (t.empty()) return 1;
  RadicalMonomial pivot_inv = t[0].inverse();
  std::vector<RadicalMonomial> ratios;
  ratios.reserve(t.size());
  for (const auto& m : t) ratios.push_back(m * pivot_inv);
  return matdetail::generators_degree(ratios);
}

// ---------------------------------------------------------------------------
// Entry degree and the class-degree bracket

// Degree over Q of the field generated by the ratios of the matrix entries
// (pivot: first nonzero entry in row-major order). The zero matrix has
// degree 1.
inline unsigned long matrix_degree(const StructuredMatrix& A) {
  if (const auto* m = std::get_if<RationalDense>(&A)) {
    matdetail::check_dense(*m);
    return 1;  // rational ratios generate Q, and the zero matrix defaults to 1
  }
  if (const auto* m = std::get_if<RadicalDiagonal>(&A)) {
    matdetail::check_diagonal(*m);
    RadicalMonomial pivot_inv = m->entries[0].inverse();
    std::vector<RadicalMonomial> ratios;
    ratios.reserve(m->entries.size());
    for (const auto& e : m->entries) ratios.push_back(e * pivot_inv);
    return matdetail::generators_degree(ratios);
  }
  const auto& b = std::get<CompanionBlock>(A);
  matdetail::check_block(b);
  // Entries are 0, 1 and alpha; the pivot is a 1, so the ratios generate
  // Q(alpha).
  return b.alpha.degree();
}

// Degree bracket for the similarity class of A: conjugating cannot raise the
// entry degree above the given representative, and the eigenvalue tuple of
// any representative is defined over an extension of degree at most n! times
// the entry degree.
struct ClassDegreeBracket {
  unsigned long lower = 1;
  unsigned long upper = 1;
};

inline ClassDegreeBracket class_degree_bracket(const StructuredMatrix& A) {
  const unsigned long n = matrix_dim(A);
  const unsigned long dt = eigentuple_degree(eigentuple(A));
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  mpz_class lo;
  mpz_cdiv_q(lo.get_mpz_t(), mpz_class(dt).get_mpz_t(), fact.get_mpz_t());
  if (lo < 1) lo = 1;
  ClassDegreeBracket b;
  b.lower = lo.get_ui();
  b.upper = matrix_degree(A);
  if (b.lower > b.upper)
    fail(ErrorCode::InvalidInput, "degree bracket inverted");  // unreachable for supported shapes
  return b;
}

// ---------------------------------------------------------------------------
// Spectral heights

inline LogLinear spectral_height(const StructuredMatrix& A) {
  return monomial_tuple_height(eigentuple(A));
}

// Value bracket {w(k) * hs(A) : k in the class-degree bracket}. Collapsed
// (and then exact) when the height vanishes or the weight takes a single
// value on the bracket.
struct WeightedSpectralBracket {
  Quantity lower = Quantity::from_rational(0);
  Quantity upper = Quantity::from_rational(0);
  bool collapsed = true;
  ClassDegreeBracket degrees;
};

namespace matdetail {

// Candidate degrees for extremizing a weight over [lo, hi]: every integer up
// to the monotonicity threshold d0, then the endpoints of the monotone tail.
inline std::vector<mpz_class> weight_candidates(const mpz_class& lo, const mpz_class& hi,
                                                const mpz_class& d0) {
  std::vector<mpz_class> cand;
  mpz_class scan_hi = hi < d0 ? hi : d0;
  if (scan_hi - lo > 200000)
    fail(ErrorCode::BudgetExceeded, "weight extremum scan range too large");
  for (mpz_class k = lo; k <= scan_hi; ++k) cand.push_back(k);
  mpz_class tail_lo = lo > d0 ? lo : d0;
  if (tail_lo <= hi) {
    cand.push_back(tail_lo);
    cand.push_back(hi);
  }
  return cand;
}

}  // namespace matdetail

inline WeightedSpectralBracket weighted_spectral_height(const StructuredMatrix& A,
                                                        const Weight& w) {
  WeightedSpectralBracket out;
  out.degrees = class_degree_bracket(A);
  LogLinear hs = spectral_height(A);
  if (hs.is_zero()) return out;  // collapsed zero regardless of the weight
  Quantity hq = Quantity::from_loglinear(hs);
  const mpz_class lo(out.degrees.lower), hi(out.degrees.upper);
  mpz_class d0 = w.classify_for_explicit(1).d0;
  std::optional<Quantity> wmin, wmax;
  for (const mpz_class& k : matdetail::weight_candidates(lo, hi, d0)) {
    Quantity v = w.eval(k);
    // An undecidable comparison can only arise between equal weight values;
    // either one then represents the shared extremum.
    if (!wmin || try_compare(v, *wmin).value_or(Cmp::Equal) == Cmp::Less) wmin = v;
    if (!wmax || try_compare(v, *wmax).value_or(Cmp::Equal) == Cmp::Greater) wmax = v;
  }
  out.lower = *wmin * hq;
  out.upper = *wmax * hq;
  out.collapsed = try_compare(*wmin, *wmax).value_or(Cmp::Equal) == Cmp::Equal;
  if (out.collapsed) out.lower = out.upper;
  return out;
}

// ---------------------------------------------------------------------------
// Operator heights

// Closed form for diagonal matrices: w(deg A) times the projective height of
// the diagonal tuple. Accepts RadicalDiagonal, or RationalDense with zero
// off-diagonal entries; the zero matrix is rejected.
inline Quantity operator_height_diagonal(const StructuredMatrix& A, const Weight& w) {
  std::vector<RadicalMonomial> entries;
  if (const auto* m = std::get_if<RadicalDiagonal>(&A)) {
    matdetail::check_diagonal(*m);
    entries = m->entries;
  } else if (const auto* m = std::get_if<RationalDense>(&A)) {
    matdetail::check_dense(*m);
    const std::size_t n = m->rows.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && m->rows[i][j] != 0)
          fail(ErrorCode::InvalidInput, "closed form requires a diagonal matrix");
    for (std::size_t i = 0; i < n; ++i)
      if (m->rows[i][i] != 0)
        entries.push_back(RadicalMonomial::from_rational(m->rows[i][i]));
    if (entries.empty())
      fail(ErrorCode::InvalidInput, "operator height of the zero matrix is undefined");
  } else {
    fail(ErrorCode::InvalidInput, "closed form requires a diagonal matrix");
  }
  unsigned long deg = matrix_degree(A);
  return w.eval(mpz_class(deg)) * Quantity::from_loglinear(monomial_tuple_height(entries));
}

// Finite lower bound for the operator height of a rational matrix: the best
// gain h2(Ax) - h2(x) over the standard basis and any extra probe vectors.
// Probes sent to zero contribute nothing; the result is floored at 0, which
// is also the value reported for the zero matrix.
inline LogLinear operator_height_lower(const RationalDense& A,
                                       const std::vector<std::vector<mpq_class>>& probes = {}) {
  matdetail::check_dense(A);
  const std::size_t n = A.rows.size();
  std::vector<std::vector<mpq_class>> all;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpq_class> e(n, 0);
    e[j] = 1;
    all.push_back(std::move(e));
  }
  for (const auto& x : probes) {
    if (x.size() != n) fail(ErrorCode::InvalidInput, "probe has the wrong dimension");
    bool nonzero = false;
    for (const auto& c : x)
      if (c != 0) nonzero = true;
    if (!nonzero) fail(ErrorCode::InvalidInput, "probe must be nonzero");
    all.push_back(x);
  }
  LogLinear best;  // the trivial floor 0
  for (const auto& x : all) {
    std::vector<mpq_class> y(n, 0);
    bool y_nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += A.rows[i][j] * x[j];
      y[i] = acc;
      if (acc != 0) y_nonzero = true;
    }
    if (!y_nonzero) continue;
    LogLinear gain = h2_height(RationalTuple{y}) - h2_height(RationalTuple{x});
    if (ll_compare(gain, best) == Cmp::Greater) best = gain;
  }
  return best;
}

// Column comparison on a diagonal matrix: each column has a single nonzero
// entry, so its weighted ell-2 height is w(1) * 0; certify that this never
// exceeds the closed-form operator height.
inline bool column_inequality_holds(const StructuredMatrix& A, const Weight& w) {
  Quantity rhs = operator_height_diagonal(A, w);
  const unsigned long n = matrix_dim(A);
  for (unsigned long j = 0; j < n; ++j) {
    // A single-entry column is projectively trivial: its field of ratios is Q
    // and its ell-2 height vanishes exactly.
    Quantity lhs = w.eval(1) * Quantity::from_loglinear(LogLinear());
    if (compare(lhs, rhs) == Cmp::Greater) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Per-level comparisons against a tower

// Spectral comparison: at level i, the block 1 (+) companion(x^(n-1) - alpha_i)
// has weighted spectral bracket whose upper end must equal
// w(d_i) * h(alpha_i) / (n-1), the weighted height of the level witness
// divided by n-1. The report also carries the tower's threshold bracket and
// the constant l_w(n^2)/(n^2 n!) scaling its lower estimate.
struct PropSpectralLevel {
  unsigned long index = 0;
  Quantity bracket_lower = Quantity::from_rational(0);
  Quantity bracket_upper = Quantity::from_rational(0);
  Quantity rhs = Quantity::from_rational(0);
  bool upper_within = false;
  bool equality = false;
};

struct PropSpectralReport {
  unsigned long n = 2;
  std::vector<PropSpectralLevel> levels;
  NorBracket nor;
  bool left_constant_known = false;
  Quantity left_constant = Quantity::from_rational(0);
};

inline PropSpectralReport prop_spectral_check(const TowerSpec& spec, unsigned long n,
                                              unsigned long levels = 0) {
  if (n < 2) fail(ErrorCode::InvalidDegree, "block size must be at least 2");
  Weight::Classification cls = spec.w.classify_for_explicit(spec.n);
  if (!cls.condition1 || !cls.condition2 || cls.limit.kind == LimitKind::ToZero)
    fail(ErrorCode::WeightIneligible,
         "spectral comparison needs an eligible, non-decreasing weight");
  PropSpectralReport rep;
  rep.n = n;
  rep.nor = northcott_bracket(spec, levels);
  Weight::LwResult lw = l_w(spec.w, n * n);
  if (lw.outcome == Weight::LwResult::Outcome::Finite) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    rep.left_constant = lw.value * rep.nor.lower_estimate *
                        mpq_class(mpz_class(1), mpz_class(n) * mpz_class(n) * fact);
    rep.left_constant_known = true;
  }
  unsigned long use = spec.levels.size();
  if (levels != 0 && levels < use) use = levels;
  for (unsigned long i = 1; i <= use; ++i) {
    const LevelRecord& lvl = spec.levels[i - 1];
    RadicalMonomial alpha = make_radical(lvl.p, lvl.q, lvl.d.get_si());
    WeightedSpectralBracket ws =
        weighted_spectral_height(StructuredMatrix{CompanionBlock{n, alpha}}, spec.w);
    PropSpectralLevel rl;
    rl.index = i;
    rl.bracket_lower = ws.lower;
    rl.bracket_upper = ws.upper;
    rl.rhs = spec.w.eval(lvl.d) * Quantity::from_loglinear(weil_height(alpha)) *
             mpq_class(mpz_class(1), mpz_class(n - 1));
    Cmp c = compare(rl.bracket_upper, rl.rhs);
    rl.upper_within = c != Cmp::Greater;
    rl.equality = c == Cmp::Equal;
    rep.levels.push_back(std::move(rl));
  }
  return rep;
}

// Operator comparison: at level i, the diagonal matrix diag(1, alpha_i, 1,
// ..., 1) has closed-form weighted operator height w(d_i) * h(alpha_i); the
// report certifies the match and places each value against half the lower
// estimate of the tower's threshold bracket.
struct OpNorthLevel {
  unsigned long index = 0;
  Quantity value = Quantity::from_rational(0);
  bool matches_closed_form = false;
  bool above_half_floor = false;
};

struct OpNorthReport {
  unsigned long n = 2;
  std::vector<OpNorthLevel> levels;
  NorBracket nor;
  Quantity half_floor = Quantity::from_rational(0);
};

inline OpNorthReport prop_opnorth_check(const TowerSpec& spec, unsigned long n,
                                        unsigned long levels = 0) {
  if (n < 2) fail(ErrorCode::InvalidDegree, "matrix size must be at least 2");
  OpNorthReport rep;
  rep.n = n;
  rep.nor = northcott_bracket(spec, levels);
  rep.half_floor = rep.nor.lower_estimate * mpq_class(1, 2);
  unsigned long use = spec.levels.size();
  if (levels != 0 && levels < use) use = levels;
  for (unsigned long i = 1; i <= use; ++i) {
    const LevelRecord& lvl = spec.levels[i - 1];
    RadicalMonomial alpha = make_radical(lvl.p, lvl.q, lvl.d.get_si());
    std::vector<RadicalMonomial> entries(n, RadicalMonomial::one());
    entries[1] = alpha;
    OpNorthLevel rl;
    rl.index = i;
    rl.value = operator_height_diagonal(StructuredMatrix{RadicalDiagonal{entries}}, spec.w);
    Quantity closed = spec.w.eval(lvl.d) * Quantity::from_loglinear(weil_height(alpha));
    rl.matches_closed_form = compare(rl.value, closed) == Cmp::Equal;
    rl.above_half_floor = compare(rl.value, rep.half_floor) != Cmp::Less;
    rep.levels.push_back(std::move(rl));
  }
  return rep;
}

}  // namespace northcott
