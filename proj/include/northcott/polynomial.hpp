#pragma once

// Integer polynomials with certified complex root isolation.
//
// Roots are approximated by simultaneous (Durand-Kerner) iteration and then
// certified a posteriori: writing W_i for the Weierstrass correction at the
// approximation z_i, every root of the polynomial lies in the union of the
// disks D(z_i, n*|W_i|), and when those disks are pairwise disjoint each one
// contains exactly one root. That turns the float iterates into rigorous
// per-root inclusion radii, which is all the Mahler-measure bracket and the
// factor reconstruction below need. Precision escalates from double through
// wider software floats until the requested tolerance certifies.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "northcott/errors.hpp"

namespace northcott {

class IntPolynomial {
 public:
  IntPolynomial() = default;  // zero polynomial

  explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) {
    trim();
  }

  static IntPolynomial x_pow_minus(unsigned deg, const mpz_class& c0, const mpz_class& lead = 1) {
    std::vector<mpz_class> v(deg + 1, mpz_class(0));
    v[0] = -c0;
    v[deg] = lead;
    return IntPolynomial(std::move(v));
  }

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const mpz_class& lead() const { return c_.back(); }
  const mpz_class& operator[](size_t i) const { return c_[i]; }

  mpq_class eval_q(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<mpz_class> out(a.c_.size() + b.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(out));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  // Primitive part with positive leading coefficient.
  IntPolynomial primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lead() < 0) g = -g;
    std::vector<mpz_class> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c / g);
    return IntPolynomial(std::move(out));
  }

  IntPolynomial derivative() const {
    if (degree() < 1) return IntPolynomial();
    std::vector<mpz_class> out;
    out.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) out.push_back(mpz_class(i) * c_[i]);
    return IntPolynomial(std::move(out));
  }

  // Coefficient reversal x^deg * f(1/x); maps roots to their inverses.
  IntPolynomial reversed() const {
    std::vector<mpz_class> out(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(out));
  }

  IntPolynomial of_negated_argument() const {  // f(-x), sign-normalized
    std::vector<mpz_class> out = c_;
    for (size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    IntPolynomial r(std::move(out));
    return r.primitive();
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
      else if (c_[i] < 0) s += "-";
      mpz_class a = abs(c_[i]);
      if (a != 1 || i == 0) s += a.get_str();
      if (i > 0) {
        if (a != 1) s += "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

namespace polydetail {

// Rational-coefficient division helpers used for exact verification.
using QPoly = std::vector<mpq_class>;  // ascending

inline QPoly to_q(const IntPolynomial& f) {
  QPoly out;
  for (const auto& c : f.coeffs()) out.emplace_back(c);
  return out;
}

inline void q_trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Division with remainder; defined whenever the divisor is nonzero.
inline void q_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  q.assign(a.size(), mpq_class(0));
  while (r.size() >= b.size() && !r.empty()) {
    mpq_class f = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      r[i + shift] -= f * b[i];
      r[i + shift].canonicalize();
    }
    q_trim(r);
  }
  q_trim(q);
}

inline QPoly q_gcd(QPoly a, QPoly b) {
  q_trim(a);
  q_trim(b);
  while (!b.empty()) {
    QPoly q, r;
    q_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lead = a.back();
    for (auto& c : a) {
      c /= lead;
      c.canonicalize();
    }
  }
  return a;
}

inline IntPolynomial q_to_primitive_int(const QPoly& f) {
  mpz_class den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(mpz_class(c * mpq_class(den)));
  return IntPolynomial(std::move(out)).primitive();
}

template <typename Real>
struct Cplx {
  Real re{}, im{};
  Cplx() = default;
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Real abs2() const { return re * re + im * im; }
};

template <typename Real>
Real real_abs(const Cplx<Real>& z) {
  using std::sqrt;
  return sqrt(z.abs2());
}

template <typename Real>
Real to_real(const mpz_class& z) {
  if constexpr (std::is_same_v<Real, double>) {
    return z.get_d();
  } else {
    return Real(z.get_str());
  }
}

template <typename Real>
struct CertifiedRoots {
  std::vector<Cplx<Real>> centers;
  std::vector<Real> radii;  // pairwise-disjoint inclusion disks, one root each
};

// Durand-Kerner with a posteriori radii; requires squarefree input of degree
// >= 1. Returns nullopt when the disks fail to separate at this precision.
template <typename Real>
std::optional<CertifiedRoots<Real>> isolate_roots(const IntPolynomial& f, Real eps) {
  using std::sqrt;
  int n = f.degree();
  std::vector<Real> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = to_real<Real>(f[i]);

  Real R = Real(0);
  for (int i = 0; i < n; ++i) {
    using std::abs;
    Real t = abs(a[i] / a[n]);
    if (t > R) R = t;
  }
  R = R + Real(1);

  std::vector<Cplx<Real>> z(n);
  const double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < n; ++i) {
    double ang = two_pi * (i + 0.257) / n;
    z[i] = Cplx<Real>(Real(0.93) * R * Real(std::cos(ang)), Real(0.93) * R * Real(std::sin(ang)));
  }

  auto horner = [&](const Cplx<Real>& x) {
    Cplx<Real> acc(a[n], Real(0));
    for (int i = n - 1; i >= 0; --i) acc = acc * x + Cplx<Real>(a[i], Real(0));
    return acc;
  };

  std::vector<Real> w_abs(n);
  for (int sweep = 0; sweep < 800; ++sweep) {
    Real worst = Real(0);
    for (int i = 0; i < n; ++i) {
      Cplx<Real> denom(a[n], Real(0));
      for (int j = 0; j < n; ++j) {
        if (j != i) denom = denom * (z[i] - z[j]);
      }
      Cplx<Real> w = horner(z[i]) / denom;
      z[i] = z[i] - w;
      w_abs[i] = real_abs(w);
      if (w_abs[i] > worst) worst = w_abs[i];
    }
    if (worst < eps) break;
  }

  CertifiedRoots<Real> out;
  out.centers = z;
  out.radii.resize(n);
  for (int i = 0; i < n; ++i) {
    Cplx<Real> denom(a[n], Real(0));
    for (int j = 0; j < n; ++j) {
      if (j != i) denom = denom * (z[i] - z[j]);
    }
    Real wi = real_abs(horner(z[i]) / denom);
    // Inflate to absorb rounding in the residual evaluation itself.
    out.radii[i] = Real(n) * wi * Real(1.000001) + eps * Real(16);
    // Reject non-finite or absurd radii (collided iterates produce NaN, and
    // NaN would sail through the disjointness comparisons below).
    if (!(out.radii[i] >= Real(0)) || out.radii[i] > (R + Real(1)) * Real(1000)) {
      return std::nullopt;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(real_abs(z[i] - z[j]) > out.radii[i] + out.radii[j])) return std::nullopt;
    }
  }
  return out;
}

}  // namespace polydetail

struct MahlerEstimate {
  double lower = 0;
  double upper = 0;
};

namespace polydetail {

// Squarefree decomposition f = prod part[e]^e over primitive parts (Yun).
inline std::vector<std::pair<IntPolynomial, unsigned>> squarefree_parts(const IntPolynomial& f) {
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  auto deriv = [](const QPoly& x) {
    QPoly d(x.size() > 1 ? x.size() - 1 : 0);
    for (size_t i = 1; i < x.size(); ++i) d[i - 1] = x[i] * mpq_class(i);
    return d;
  };
  QPoly p = to_q(f.primitive());
  if (p.size() <= 1) return out;
  QPoly dp = deriv(p);
  QPoly a0 = q_gcd(p, dp);
  QPoly b, c, r;
  q_divmod(p, a0, b, r);
  q_divmod(dp, a0, c, r);
  QPoly d = c;
  {
    QPoly bp = deriv(b);
    d.resize(std::max(d.size(), bp.size()), mpq_class(0));
    for (size_t i = 0; i < bp.size(); ++i) d[i] -= bp[i];
    q_trim(d);
  }
  unsigned i = 1;
  while (b.size() > 1) {
    QPoly a = q_gcd(b, d);
    if (a.size() > 1) {
      out.emplace_back(q_to_primitive_int(a), i);
    }
    QPoly b_next, r2;
    q_divmod(b, a, b_next, r2);
    QPoly c_next, r3;
    q_divmod(d, a, c_next, r3);
    QPoly bp = deriv(b_next);
    d = c_next;
    d.resize(std::max(d.size(), bp.size()), mpq_class(0));
    for (size_t k = 0; k < bp.size(); ++k) d[k] -= bp[k];
    q_trim(d);
    b = std::move(b_next);
    ++i;
  }
  return out;
}

}  // namespace polydetail

// Certified bracket for log M(f), the logarithmic Mahler measure
// log|lead| + sum log max(1, |root|). Escalates precision until the bracket
// width drops below tol.
inline MahlerEstimate mahler_measure(const IntPolynomial& f, double tol = 1e-9) {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "Mahler measure of the zero polynomial");
  double lead_log = 0;
  {
    mpz_class a = abs(f.lead());
    // log of an integer in doubles is fine to ~1e-13 relative; widen slightly.
    lead_log = std::log(a.get_d());
  }
  if (f.degree() == 0) {
    return {lead_log - 1e-12 * std::abs(lead_log) - 1e-300, lead_log + 1e-12 * std::abs(lead_log) + 1e-300};
  }

  auto parts = polydetail::squarefree_parts(f);

  auto attempt = [&](auto real_tag) -> std::optional<MahlerEstimate> {
    using Real = decltype(real_tag);
    double lo = lead_log, hi = lead_log;
    // slack for the double log of the integer leading coefficient
    lo -= 1e-12 * (1 + std::abs(lead_log));
    hi += 1e-12 * (1 + std::abs(lead_log));
    for (const auto& [g, mult] : parts) {
      Real eps;
      if constexpr (std::is_same_v<Real, double>) {
        eps = 1e-13;
      } else {
        eps = Real("1e-40");
      }
      auto roots = polydetail::isolate_roots<Real>(g, eps);
      if (!roots) return std::nullopt;
      for (size_t i = 0; i < roots->centers.size(); ++i) {
        Real r = polydetail::real_abs(roots->centers[i]);
        Real rl = r - roots->radii[i];
        Real rh = r + roots->radii[i];
        double dl = static_cast<double>(rl);
        double dh = static_cast<double>(rh);
        double term_lo = dl > 1 ? std::log(dl) * (1 - 1e-14) - 1e-15 : 0.0;
        double term_hi = dh > 1 ? std::log(dh) * (1 + 1e-14) + 1e-15 : 0.0;
        lo += mult * term_lo;
        hi += mult * term_hi;
      }
    }
    return MahlerEstimate{lo, hi};
  };

  if (auto e = attempt(double{})) {
    if (e->upper - e->lower <= tol) return *e;
  }
  using boost::multiprecision::cpp_bin_float_50;
  if (auto e = attempt(cpp_bin_float_50{})) {
    if (e->upper - e->lower <= tol) return *e;
  }
  using boost::multiprecision::cpp_bin_float_100;
  if (auto e = attempt(cpp_bin_float_100{})) {
    if (e->upper - e->lower <= tol) return *e;
  }
  fail(ErrorCode::BudgetExceeded, "Mahler bracket did not certify at max precision");
}

// Factorization into irreducibles over Q (primitive integer representatives),
// by certified-root subset reconstruction: a rational factor's coefficients
// are elementary symmetric functions of a root subset scaled by the leading
// coefficient; candidates passing a float screen are verified by exact
// division, and if no proper subset verifies the polynomial is irreducible
// (the screen cannot miss a true factor because root disks are certified).
inline std::vector<std::pair<IntPolynomial, unsigned>> factor_over_q(const IntPolynomial& f_in) {
  if (f_in.is_zero()) fail(ErrorCode::InvalidInput, "factoring the zero polynomial");
  std::vector<std::pair<IntPolynomial, unsigned>> result;
  auto parts = polydetail::squarefree_parts(f_in);

  for (auto& [sf, mult] : parts) {
    std::vector<IntPolynomial> stack{sf};
    while (!stack.empty()) {
      IntPolynomial g = stack.back().primitive();
      stack.pop_back();
      int n = g.degree();
      if (n <= 1) {
        if (n == 1) result.emplace_back(g, mult);
        continue;
      }
      if (n > 24) fail(ErrorCode::BudgetExceeded, "factorization degree cap exceeded");

      using Real = boost::multiprecision::cpp_bin_float_50;
      auto roots = polydetail::isolate_roots<Real>(g, Real("1e-40"));
      if (!roots) fail(ErrorCode::BudgetExceeded, "root isolation failed during factorization");

      bool split = false;
      for (int size = 1; size < n && !split; ++size) {
        // Enumerate subsets of the given size.
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
          // Build lead * prod (x - z_i) for the subset.
          std::vector<polydetail::Cplx<Real>> poly{
              polydetail::Cplx<Real>(polydetail::to_real<Real>(g.lead()), Real(0))};
          for (int t = 0; t < size; ++t) {
            const auto& z = roots->centers[idx[t]];
            std::vector<polydetail::Cplx<Real>> next(poly.size() + 1);
            for (size_t c = 0; c < poly.size(); ++c) {
              next[c + 1] = next[c + 1] + poly[c];
              next[c] = next[c] - poly[c] * z;
            }
            poly = std::move(next);
          }
          bool integral = true;
          std::vector<mpz_class> cand(poly.size());
          for (size_t c = 0; c + 1 < poly.size() && integral; ++c) {
            Real re = poly[c].re;
            Real im = poly[c].im;
            using std::abs;
            Real rounded = boost::multiprecision::round(re);
            if (abs(re - rounded) > Real("1e-6") || abs(im) > Real("1e-6")) {
              integral = false;
            } else {
              std::string s = rounded.str(0, std::ios_base::fixed);
              if (auto dot = s.find('.'); dot != std::string::npos) s.resize(dot);
              if (s.empty() || s == "-") s = "0";
              cand[c] = mpz_class(s);
            }
          }
          if (integral) {
            cand.back() = g.lead();
            IntPolynomial candidate = IntPolynomial(cand).primitive();
            if (candidate.degree() == size) {
              polydetail::QPoly q, r;
              polydetail::q_divmod(polydetail::to_q(g), polydetail::to_q(candidate), q, r);
              if (r.empty()) {
                stack.push_back(candidate);
                stack.push_back(polydetail::q_to_primitive_int(q));
                split = true;
                break;
              }
            }
          }
          // next subset
          int t = size - 1;
          while (t >= 0 && idx[t] == n - size + t) --t;
          if (t < 0) break;
          ++idx[t];
          for (int u = t + 1; u < size; ++u) idx[u] = idx[u - 1] + 1;
        }
        // Any nontrivial factorization has a factor of degree <= n/2.
        if (size >= n / 2 && !split) break;
      }
      if (!split) result.emplace_back(g, mult);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return result;
}

inline bool is_irreducible_over_q(const IntPolynomial& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_over_q(f);
  return fac.size() == 1 && fac[0].second == 1 && fac[0].first.degree() == f.degree();
}

// Resultant Res_x(f, g) over the rationals via Euclidean pseudo-division.
inline mpq_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
  polydetail::QPoly a = polydetail::to_q(f), b = polydetail::to_q(g);
  if (a.empty() || b.empty()) return 0;
  mpq_class res = 1;
  while (b.size() > 1) {
    polydetail::QPoly q, r;
    polydetail::q_divmod(a, b, q, r);
    int da = static_cast<int>(a.size()) - 1;
    int db = static_cast<int>(b.size()) - 1;
    int dr = static_cast<int>(r.size()) - 1;
    mpq_class lb = b.back();
    // res(a,b) = (-1)^{da*db} * lb^{da-dr} * res(b,r)
    if ((da * db) % 2 == 1) res = -res;
    if (r.empty()) return 0;
    int e = da - dr;
    mpq_class lb_pow = 1;
    for (int i = 0; i < e; ++i) lb_pow *= lb;
    res *= lb_pow;
    a = std::move(b);
    b = std::move(r);
  }
  // b is a constant c; res *= c^{deg a}
  mpq_class c = b[0];
  mpq_class cpow = 1;
  for (int i = 0; i < static_cast<int>(a.size()) - 1; ++i) cpow *= c;
  res *= cpow;
  res.canonicalize();
  return res;
}

}  // namespace northcott
