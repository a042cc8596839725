#pragma once

// Radical monomials: numbers of the form  zeta_m^k * r * prod_p p^{e_p}
// with r a positive rational, the e_p rational, and each p^{e_p} the
// canonical positive real power of a prime.
//
// Canonical form: the root of unity is reduced (gcd(k, m) = 1, m = 1 for
// trivial), the sign of the rational part is folded into the root of unity
// (-1 = zeta_2), integer parts of exponents are folded into the scalar, and
// the scalar is coprime to every prime that still carries a fractional
// exponent. Structural equality of canonical forms coincides with equality
// of the represented numbers.
//
// Degrees are computed exactly:
//   * pure root of unity times a rational: Euler phi of the order;
//   * real monomial: the least F with an F-th power rational (the lcm of
//     exponent denominators) -- for positive real radicals the degree equals
//     that order because distinct canonical radicals of rationals are
//     multiplicatively independent modulo rationals;
//   * several real generators: the field degree is the lattice index
//     [V : Z^k] of the exponent lattice, corrected for quadratic subfields
//     shared with the cyclotomic part (see compositum_degree);
//   * a mixed single generator is handled through irreducibility of x^F - b
//     and rejected (UnsupportedDegree) when that criterion does not apply.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "northcott/errors.hpp"
#include "northcott/loglinear.hpp"
#include "northcott/polynomial.hpp"
#include "northcott/primes.hpp"
#include "northcott/value.hpp"

namespace northcott {

namespace radicaldetail {

inline unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Cyclotomic polynomial Phi_m over Q, ascending coefficients.
inline polydetail::QPoly cyclotomic(unsigned long m) {
  std::vector<polydetail::QPoly> phi(m + 1);
  for (unsigned long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    // x^d - 1 divided by all Phi_e for proper divisors e of d.
    polydetail::QPoly num(d + 1, mpq_class(0));
    num[0] = -1;
    num[d] = 1;
    for (unsigned long e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      polydetail::QPoly q, r;
      polydetail::q_divmod(num, phi[e], q, r);
      num = std::move(q);
    }
    phi[d] = std::move(num);
  }
  return phi[m];
}

}  // namespace radicaldetail

class RadicalMonomial {
 public:
  using Exponents = std::map<mpz_class, mpq_class>;

  RadicalMonomial() = default;  // the number 1

  static RadicalMonomial one() { return RadicalMonomial(); }

  static RadicalMonomial from_rational(const mpq_class& r) {
    RadicalMonomial m;
    m.scalar_ = r;
    m.scalar_.canonicalize();
    m.canonicalize();
    return m;
  }

  static RadicalMonomial root_of_unity(unsigned long order, unsigned long exp) {
    if (order == 0) fail(ErrorCode::InvalidInput, "root of unity of order zero");
    RadicalMonomial m;
    m.zeta_order_ = order;
    m.zeta_exp_ = exp % order;
    m.canonicalize();
    return m;
  }

  // General constructor; exponent keys must be prime, the scalar nonzero.
  static RadicalMonomial from_parts(unsigned long zeta_order, unsigned long zeta_exp,
                                    const mpq_class& scalar, const Exponents& exps) {
    if (zeta_order == 0) fail(ErrorCode::InvalidInput, "root of unity of order zero");
    RadicalMonomial m;
    m.zeta_order_ = zeta_order;
    m.zeta_exp_ = zeta_exp % zeta_order;
    m.scalar_ = scalar;
    m.scalar_.canonicalize();
    for (const auto& [p, e] : exps) {
      if (p < 2 || !is_prime(p)) fail(ErrorCode::InvalidInput, "exponent base must be prime");
      if (e != 0) m.exps_[p] += e;
    }
    m.canonicalize();
    return m;
  }

  // base^expo for a positive rational base, canonical positive real root.
  static RadicalMonomial rational_power(const mpq_class& base, const mpq_class& expo) {
    if (base <= 0) fail(ErrorCode::InvalidBase, "rational_power requires a positive base");
    RadicalMonomial m;
    for (const auto& [p, n] : factor(base.get_num())) {
      m.exps_[p] += mpq_class(n) * expo;
    }
    for (const auto& [p, n] : factor(base.get_den())) {
      m.exps_[p] -= mpq_class(n) * expo;
    }
    m.canonicalize();
    return m;
  }

  unsigned long zeta_order() const { return zeta_order_; }
  unsigned long zeta_exp() const { return zeta_exp_; }
  const mpq_class& scalar() const { return scalar_; }
  const Exponents& exponents() const { return exps_; }

  bool is_rational() const { return exps_.empty() && zeta_order_ <= 2; }
  bool is_real() const { return zeta_order_ <= 2; }
  bool is_one() const { return zeta_order_ == 1 && scalar_ == 1 && exps_.empty(); }

  mpq_class as_rational() const {
    if (!is_rational()) fail(ErrorCode::VariantMismatch, "monomial is not rational");
    return zeta_order_ == 2 ? mpq_class(-scalar_) : scalar_;
  }

  friend RadicalMonomial operator*(const RadicalMonomial& a, const RadicalMonomial& b) {
    RadicalMonomial m = a;
    m.fold_zeta(b.zeta_order_, b.zeta_exp_);
    m.scalar_ *= b.scalar_;
    m.scalar_.canonicalize();
    for (const auto& [p, e] : b.exps_) m.exps_[p] += e;
    m.canonicalize();
    return m;
  }

  RadicalMonomial inverse() const {
    RadicalMonomial m;
    m.zeta_order_ = zeta_order_;
    m.zeta_exp_ = zeta_order_ > 1 ? (zeta_order_ - zeta_exp_) % zeta_order_ : 0;
    m.scalar_ = 1 / scalar_;
    m.scalar_.canonicalize();
    for (const auto& [p, e] : exps_) m.exps_[p] = -e;
    m.canonicalize();
    return m;
  }

  RadicalMonomial pow_int(long s) const {
    if (s == 0) return one();
    if (s < 0) return inverse().pow_int(-s);
    RadicalMonomial m;
    m.zeta_order_ = zeta_order_;
    m.zeta_exp_ = static_cast<unsigned long>(
        (static_cast<unsigned long long>(zeta_exp_) * static_cast<unsigned long long>(s)) %
        zeta_order_);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), scalar_.get_num().get_mpz_t(), static_cast<unsigned long>(s));
    mpz_pow_ui(den.get_mpz_t(), scalar_.get_den().get_mpz_t(), static_cast<unsigned long>(s));
    m.scalar_ = mpq_class(num) / mpq_class(den);
    m.scalar_.canonicalize();
    for (const auto& [p, e] : exps_) m.exps_[p] = e * s;
    m.canonicalize();
    return m;
  }

  // Canonical positive real n-th root; defined only for positive reals.
  RadicalMonomial nth_root(unsigned long n) const {
    if (n == 0) fail(ErrorCode::InvalidDegree, "0-th root");
    if (zeta_order_ != 1) {
      fail(ErrorCode::AmbiguousRoot, "canonical real root requires a positive real monomial");
    }
    RadicalMonomial m;
    m.exps_ = exps_;
    for (auto& [p, e] : m.exps_) {
      e /= n;
      e.canonicalize();
    }
    for (const auto& [p, mult] : factor(scalar_.get_num())) {
      mpq_class t{mpz_class(mult), mpz_class(n)};
      t.canonicalize();
      m.exps_[p] += t;
    }
    for (const auto& [p, mult] : factor(scalar_.get_den())) {
      mpq_class t{mpz_class(mult), mpz_class(n)};
      t.canonicalize();
      m.exps_[p] -= t;
    }
    m.canonicalize();
    return m;
  }

  // Exponent map of |monomial| including the scalar's prime factorization.
  Exponents full_exponents() const {
    Exponents full = exps_;
    for (const auto& [p, mult] : factor(scalar_.get_num())) full[p] += mpq_class(mult);
    for (const auto& [p, mult] : factor(scalar_.get_den())) full[p] -= mpq_class(mult);
    for (auto it = full.begin(); it != full.end();) {
      it->second.canonicalize();
      it = it->second == 0 ? full.erase(it) : std::next(it);
    }
    return full;
  }

  LogLinear log_abs() const {
    LogLinear l = LogLinear::log_of_rational(scalar_);
    for (const auto& [p, e] : exps_) {
      LogLinear t = LogLinear::log_of_prime(p, e);
      l += t;
    }
    return l;
  }

  // Exact real value; defined for real monomials only.
  Value real_value() const {
    if (!is_real()) fail(ErrorCode::VariantMismatch, "monomial is not real");
    std::map<mpz_class, mpq_class> frac(exps_.begin(), exps_.end());
    Value v = Value::radical_factored(frac);
    v *= scalar_;
    if (zeta_order_ == 2) v *= mpq_class(-1);
    return v;
  }

  // Least positive F with monomial^F rational. F is a multiple of the lcm E
  // of the exponent denominators, and the leftover root of unity zeta^{kE}
  // must land in {1, -1}; an order-2 leftover is already rational.
  unsigned long rational_power_order() const {
    unsigned long e = 1;
    for (const auto& [p, ex] : exps_) {
      mpz_class d = ex.get_den();
      if (!d.fits_ulong_p()) fail(ErrorCode::BudgetExceeded, "exponent denominator too large");
      e = std::lcm(e, d.get_ui());
    }
    unsigned long long ke = static_cast<unsigned long long>(zeta_exp_) * e;
    unsigned long resid = static_cast<unsigned long>(
        zeta_order_ / std::gcd(static_cast<unsigned long long>(zeta_order_), ke));
    unsigned long t = resid <= 2 ? 1 : (resid % 2 == 0 ? resid / 2 : resid);
    return e * t;
  }

  // Exact degree [Q(monomial) : Q].
  unsigned long degree() const {
    if (exps_.empty()) return radicaldetail::euler_phi(zeta_order_);
    if (zeta_order_ <= 2) {
      // Positive real radicals of distinct canonical form are multiplicatively
      // independent modulo rationals, so the degree is the order in
      // R_{>0}/Q_{>0}; a sign does not change the field.
      return rational_power_order();
    }
    // Mixed generator: degree F when x^F - b is irreducible.
    unsigned long f = rational_power_order();
    mpq_class b = pow_int(static_cast<long>(f)).as_rational();
    if (xf_minus_b_irreducible(f, b)) return f;
    fail(ErrorCode::UnsupportedDegree,
         "degree of a mixed root-of-unity/radical generator outside the power criterion");
  }

  // Minimal polynomial over Z, primitive with positive leading coefficient.
  IntPolynomial min_poly() const {
    if (exps_.empty()) {
      // scalar * zeta: substitute x/s into the cyclotomic polynomial.
      polydetail::QPoly phi = radicaldetail::cyclotomic(zeta_order_);
      size_t deg = phi.size() - 1;
      polydetail::QPoly scaled(phi.size());
      mpq_class pw = 1;
      for (size_t i = 0; i <= deg; ++i) {
        scaled[deg - i] = phi[deg - i] * pw;
        pw *= scalar_;
      }
      return polydetail::q_to_primitive_int(scaled);
    }
    unsigned long d = degree();  // throws UnsupportedDegree when it cannot settle
    unsigned long f = rational_power_order();
    if (d != f) {
      fail(ErrorCode::UnsupportedDegree, "minimal polynomial unavailable for this generator");
    }
    mpq_class b = pow_int(static_cast<long>(f)).as_rational();
    std::vector<mpz_class> c(f + 1, mpz_class(0));
    c[0] = -b.get_num();
    c[f] = b.get_den();
    return IntPolynomial(std::move(c)).primitive();
  }

  friend bool operator==(const RadicalMonomial& a, const RadicalMonomial& b) {
    return a.zeta_order_ == b.zeta_order_ && a.zeta_exp_ == b.zeta_exp_ &&
           a.scalar_ == b.scalar_ && a.exps_ == b.exps_;
  }
  friend bool operator!=(const RadicalMonomial& a, const RadicalMonomial& b) { return !(a == b); }

  friend bool operator<(const RadicalMonomial& a, const RadicalMonomial& b) {
    if (a.zeta_order_ != b.zeta_order_) return a.zeta_order_ < b.zeta_order_;
    if (a.zeta_exp_ != b.zeta_exp_) return a.zeta_exp_ < b.zeta_exp_;
    if (a.scalar_ != b.scalar_) return a.scalar_ < b.scalar_;
    return a.exps_ < b.exps_;
  }

  std::string to_string() const {
    std::vector<std::string> parts;
    if (zeta_order_ >= 3) {
      std::string z = "zeta(" + std::to_string(zeta_order_) + ")";
      if (zeta_exp_ != 1) z += "^" + std::to_string(zeta_exp_);
      parts.push_back(z);
    }
    if (scalar_ != 1 || (zeta_order_ < 3 && exps_.empty())) {
      parts.push_back(scalar_.get_str());
    }
    for (const auto& [p, e] : exps_) {
      parts.push_back(p.get_str() + "^(" + e.get_str() + ")");
    }
    std::string body;
    for (const auto& s : parts) {
      if (!body.empty()) body += "*";
      body += s;
    }
    if (zeta_order_ == 2) body = "-" + body;
    return body;
  }

 private:
  void fold_zeta(unsigned long order, unsigned long exp) {
    unsigned long m = std::lcm(zeta_order_, order);
    unsigned long long k = static_cast<unsigned long long>(zeta_exp_) * (m / zeta_order_) +
                           static_cast<unsigned long long>(exp % order) * (m / order);
    zeta_order_ = m;
    zeta_exp_ = static_cast<unsigned long>(k % m);
  }

  void canonicalize() {
    if (scalar_ == 0) fail(ErrorCode::InvalidInput, "monomial scalar must be nonzero");
    if (scalar_ < 0) {
      scalar_ = -scalar_;
      fold_zeta(2, 1);
    }
    zeta_exp_ %= zeta_order_;
    unsigned long g = std::gcd(zeta_exp_, zeta_order_);  // gcd(0, m) = m handles exp 0
    zeta_order_ /= g;
    zeta_exp_ /= g;

    // Absorb scalar factors of primes that carry fractional exponents.
    mpz_class num = scalar_.get_num(), den = scalar_.get_den();
    for (auto& [p, e] : exps_) {
      while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        e += 1;
      }
      while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        e -= 1;
      }
    }
    scalar_ = mpq_class(num) / mpq_class(den);
    scalar_.canonicalize();

    // Fold integer exponents back into the scalar and drop zeros.
    for (auto it = exps_.begin(); it != exps_.end();) {
      it->second.canonicalize();
      if (it->second == 0) {
        it = exps_.erase(it);
        continue;
      }
      if (it->second.get_den() == 1) {
        mpz_class ip = it->second.get_num();
        if (!mpz_fits_slong_p(ip.get_mpz_t())) {
          fail(ErrorCode::BudgetExceeded, "integer exponent too large to fold");
        }
        long n = ip.get_si();
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), it->first.get_mpz_t(), static_cast<unsigned long>(std::abs(n)));
        if (n > 0) {
          scalar_ *= mpq_class(pw);
        } else {
          scalar_ /= mpq_class(pw);
        }
        scalar_.canonicalize();
        it = exps_.erase(it);
        continue;
      }
      ++it;
    }
  }

  // Irreducibility of x^f - b over Q: b must not be a p-th power for any
  // prime p dividing f, and if 4 | f then b must not equal -4 c^4.
  static bool xf_minus_b_irreducible(unsigned long f, const mpq_class& b) {
    auto is_pth_power = [](const mpq_class& v, unsigned long p) {
      if (v < 0 && p % 2 == 0) return false;
      mpz_class n = abs(v.get_num()), d = v.get_den();
      mpz_class rn, rd;
      bool en = mpz_root(rn.get_mpz_t(), n.get_mpz_t(), p) != 0;
      bool ed = mpz_root(rd.get_mpz_t(), d.get_mpz_t(), p) != 0;
      return en && ed;
    };
    unsigned long rest = f;
    for (unsigned long p = 2; p * p <= rest; ++p) {
      if (rest % p == 0) {
        if (is_pth_power(b, p)) return false;
        while (rest % p == 0) rest /= p;
      }
    }
    if (rest > 1 && is_pth_power(b, rest)) return false;
    if (f % 4 == 0) {
      mpq_class m4 = -b / 4;
      if (m4 > 0 && is_pth_power(m4, 4)) return false;
    }
    return true;
  }

  unsigned long zeta_order_ = 1;
  unsigned long zeta_exp_ = 0;
  mpq_class scalar_ = 1;
  Exponents exps_;
};

// (p/q)^(1/d) for a prime p and a prime (or absent, q = 1) denominator.
inline RadicalMonomial make_radical(const mpz_class& p, const mpz_class& q, long d) {
  if (d < 1) fail(ErrorCode::InvalidDegree, "root index must be a positive integer");
  if (p < 2 || !is_prime(p)) fail(ErrorCode::InvalidInput, "numerator must be prime");
  if (q != 1 && (q < 2 || !is_prime(q))) {
    fail(ErrorCode::InvalidInput, "denominator must be prime or 1");
  }
  if (p == q) fail(ErrorCode::DegenerateRadical, "numerator and denominator coincide");
  RadicalMonomial::Exponents e;
  e[p] = mpq_class(1, d);
  if (q != 1) e[q] = mpq_class(-1, d);
  for (auto& [k, v] : e) v.canonicalize();
  return RadicalMonomial::from_parts(1, 0, 1, e);
}

namespace radicaldetail {

using Matrix = std::vector<std::vector<mpz_class>>;  // row-major

// Column-style Hermite reduction: columns generate a full-rank sublattice of
// Z^k; returns a lower-triangular basis with positive diagonal.
inline Matrix hnf_columns(size_t k, std::vector<std::vector<mpz_class>> cols) {
  auto col_entry = [&](size_t c, size_t r) -> mpz_class& { return cols[c][r]; };
  for (size_t i = 0; i < k; ++i) {
    for (;;) {
      // Pick the column j >= i with smallest nonzero |entry| in row i.
      size_t best = cols.size();
      for (size_t j = i; j < cols.size(); ++j) {
        if (col_entry(j, i) == 0) continue;
        if (best == cols.size() ||
            cmp(abs(col_entry(j, i)), abs(col_entry(best, i))) < 0) {
          best = j;
        }
      }
      if (best == cols.size()) {
        fail(ErrorCode::InvalidInput, "exponent lattice unexpectedly rank deficient");
      }
      std::swap(cols[i], cols[best]);
      bool clean = true;
      for (size_t j = i + 1; j < cols.size(); ++j) {
        if (col_entry(j, i) == 0) continue;
        mpz_class q = col_entry(j, i) / col_entry(i, i);  // truncated division
        if (q != 0) {
          for (size_t r = 0; r < k; ++r) cols[j][r] -= q * cols[i][r];
        }
        if (col_entry(j, i) != 0) clean = false;
      }
      if (clean) break;
    }
    if (col_entry(i, i) < 0) {
      for (size_t r = 0; r < k; ++r) cols[i][r] = -cols[i][r];
    }
  }
  Matrix h(k, std::vector<mpz_class>(k));
  for (size_t r = 0; r < k; ++r) {
    for (size_t c = 0; c < k; ++c) h[r][c] = cols[c][r];
  }
  return h;
}

// Diagonalization U * C * W = D over Z with tracking of U^{-1} (columns of
// U^{-1} express the diagonal quotient generators in the input basis).
inline void snf_diagonal(Matrix c, std::vector<mpz_class>& diag, Matrix& uinv) {
  size_t k = c.size();
  uinv.assign(k, std::vector<mpz_class>(k, 0));
  for (size_t i = 0; i < k; ++i) uinv[i][i] = 1;
  auto swap_rows = [&](size_t a, size_t b) {
    std::swap(c[a], c[b]);
    for (size_t r = 0; r < k; ++r) std::swap(uinv[r][a], uinv[r][b]);  // columns of U^{-1}
  };
  auto row_sub = [&](size_t dst, size_t src, const mpz_class& q) {
    // row_dst -= q * row_src  =>  U^{-1} column src += q * column dst
    for (size_t j = 0; j < k; ++j) c[dst][j] -= q * c[src][j];
    for (size_t r = 0; r < k; ++r) uinv[r][src] += q * uinv[r][dst];
  };
  auto col_sub = [&](size_t dst, size_t src, const mpz_class& q) {
    for (size_t r = 0; r < k; ++r) c[r][dst] -= q * c[r][src];
  };
  for (size_t t = 0; t < k; ++t) {
    for (;;) {
      size_t pr = k, pc = k;
      for (size_t r = t; r < k; ++r) {
        for (size_t cc = t; cc < k; ++cc) {
          if (c[r][cc] == 0) continue;
          if (pr == k || cmp(abs(c[r][cc]), abs(c[pr][pc])) < 0) {
            pr = r;
            pc = cc;
          }
        }
      }
      if (pr == k) fail(ErrorCode::InvalidInput, "quotient relation matrix is singular");
      if (pr != t) swap_rows(t, pr);
      if (pc != t) {
        for (size_t r = 0; r < k; ++r) std::swap(c[r][t], c[r][pc]);
      }
      bool clean = true;
      for (size_t r = t + 1; r < k; ++r) {
        if (c[r][t] == 0) continue;
        mpz_class q = c[r][t] / c[t][t];
        row_sub(r, t, q);
        if (c[r][t] != 0) clean = false;
      }
      for (size_t cc = t + 1; cc < k; ++cc) {
        if (c[t][cc] == 0) continue;
        mpz_class q = c[t][cc] / c[t][t];
        col_sub(cc, t, q);
        if (c[t][cc] != 0) clean = false;
      }
      if (clean) break;
    }
    if (c[t][t] < 0) {
      for (size_t j = 0; j < k; ++j) c[t][j] = -c[t][j];
      for (size_t r = 0; r < k; ++r) uinv[r][t] = -uinv[r][t];
    }
  }
  diag.resize(k);
  for (size_t t = 0; t < k; ++t) diag[t] = c[t][t];
}

}  // namespace radicaldetail

// Exact degree over Q of the field generated by several monomials.
// Mixed generators are first separated: two generators with the same radical
// part differ by a root of unity (absorbed into the cyclotomic part), and a
// mixed generator whose root of unity already lies in the accumulated
// cyclotomic field is stripped to its radical part. Remaining mixed
// generators are unsupported.
inline unsigned long compositum_degree(const std::vector<RadicalMonomial>& gens) {
  unsigned long cyclo = 1;  // order U of the cyclotomic part
  struct MixedGen {
    unsigned long m, k;
    RadicalMonomial::Exponents exps;
  };
  std::vector<MixedGen> mixed;
  std::vector<RadicalMonomial::Exponents> real_vecs;

  for (const auto& g : gens) {
    if (g.exponents().empty()) {
      if (g.zeta_order() >= 3) cyclo = std::lcm(cyclo, g.zeta_order());
      continue;  // rational (possibly signed) contributes nothing
    }
    if (g.zeta_order() <= 2) {
      real_vecs.push_back(g.exponents());
    } else {
      mixed.push_back({g.zeta_order(), g.zeta_exp(), g.exponents()});
    }
  }

  auto ratio_zeta_order = [](unsigned long m1, unsigned long k1, unsigned long m2,
                             unsigned long k2) {
    unsigned long m = std::lcm(m1, m2);
    unsigned long long k = static_cast<unsigned long long>(k1) * (m / m1) +
                           static_cast<unsigned long long>((m2 - k2) % m2) * (m / m2);
    unsigned long kk = static_cast<unsigned long>(k % m);
    return m / std::gcd(m, kk);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // Pairs of mixed generators sharing a radical part: ratio is a root of unity.
    for (size_t i = 0; i < mixed.size() && !changed; ++i) {
      for (size_t j = i + 1; j < mixed.size() && !changed; ++j) {
        if (mixed[i].exps == mixed[j].exps) {
          cyclo = std::lcm(cyclo, ratio_zeta_order(mixed[i].m, mixed[i].k, mixed[j].m,
                                                   mixed[j].k));
          mixed.erase(mixed.begin() + static_cast<long>(j));
          changed = true;
        }
      }
    }
    // Mixed generator sharing its radical part with a real generator.
    for (size_t i = 0; i < mixed.size() && !changed; ++i) {
      for (const auto& rv : real_vecs) {
        if (mixed[i].exps == rv) {
          cyclo = std::lcm(cyclo, mixed[i].m);
          mixed.erase(mixed.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }
    // Mixed generator whose root of unity is already available.
    for (size_t i = 0; i < mixed.size() && !changed; ++i) {
      if (cyclo % mixed[i].m == 0) {
        real_vecs.push_back(mixed[i].exps);
        mixed.erase(mixed.begin() + static_cast<long>(i));
        changed = true;
      }
    }
  }
  if (!mixed.empty()) {
    fail(ErrorCode::UnsupportedDegree,
         "compositum with an inseparable mixed generator is unsupported");
  }

  unsigned long phi_u = radicaldetail::euler_phi(cyclo);

  if (real_vecs.empty()) return phi_u;

  // Primes appearing in the radical generators.
  std::vector<mpz_class> primes;
  for (const auto& v : real_vecs) {
    for (const auto& [p, e] : v) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  size_t k = primes.size();

  mpz_class big_l = 1;
  for (const auto& v : real_vecs) {
    for (const auto& [p, e] : v) {
      mpz_lcm(big_l.get_mpz_t(), big_l.get_mpz_t(), e.get_den().get_mpz_t());
    }
  }

  // Columns generating L*V: L*Z^k plus the scaled exponent vectors.
  std::vector<std::vector<mpz_class>> cols;
  for (size_t i = 0; i < k; ++i) {
    std::vector<mpz_class> c(k, 0);
    c[i] = big_l;
    cols.push_back(std::move(c));
  }
  for (const auto& v : real_vecs) {
    std::vector<mpz_class> c(k, 0);
    for (const auto& [p, e] : v) {
      size_t idx = static_cast<size_t>(
          std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
      mpq_class scaled = e * mpq_class(big_l);
      scaled.canonicalize();
      c[idx] = scaled.get_num();  // denominator is 1 by construction
    }
    cols.push_back(std::move(c));
  }

  radicaldetail::Matrix h = radicaldetail::hnf_columns(k, std::move(cols));
  mpz_class det_h = 1;
  for (size_t i = 0; i < k; ++i) det_h *= h[i][i];
  mpz_class lk;
  mpz_pow_ui(lk.get_mpz_t(), big_l.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class index_z;
  mpz_divexact(index_z.get_mpz_t(), lk.get_mpz_t(), det_h.get_mpz_t());
  if (!index_z.fits_ulong_p()) fail(ErrorCode::BudgetExceeded, "lattice index overflow");
  unsigned long index = index_z.get_ui();

  // Quotient V / Z^k: express L*e_j in the Hermite basis by forward
  // substitution (H is lower triangular) and diagonalize the relation matrix.
  radicaldetail::Matrix c(k, std::vector<mpz_class>(k, 0));
  for (size_t j = 0; j < k; ++j) {
    // solve H x = L e_j
    std::vector<mpz_class> x(k, 0);
    for (size_t r = 0; r < k; ++r) {
      mpz_class rhs = (r == j) ? big_l : mpz_class(0);
      for (size_t cidx = 0; cidx < r; ++cidx) rhs -= h[r][cidx] * x[cidx];
      mpz_class q;
      if (!mpz_divisible_p(rhs.get_mpz_t(), h[r][r].get_mpz_t())) {
        fail(ErrorCode::InvalidInput, "lattice solve lost integrality");
      }
      mpz_divexact(q.get_mpz_t(), rhs.get_mpz_t(), h[r][r].get_mpz_t());
      x[r] = q;
    }
    for (size_t r = 0; r < k; ++r) c[r][j] = x[r];
  }

  std::vector<mpz_class> diag;
  radicaldetail::Matrix uinv;
  radicaldetail::snf_diagonal(std::move(c), diag, uinv);

  // Squarefree kernels of the 2-torsion generators of V / Z^k.
  std::vector<std::set<mpz_class>> torsion_kernels;
  for (size_t t = 0; t < k; ++t) {
    if (diag[t] % 2 != 0) continue;
    mpz_class half = diag[t] / 2;
    std::set<mpz_class> kernel;
    for (size_t r = 0; r < k; ++r) {
      // v_r = (1/L) * sum_c H[r][c] * half * uinv[c][t]
      mpz_class num = 0;
      for (size_t cc = 0; cc < k; ++cc) num += h[r][cc] * half * uinv[cc][t];
      // fractional part of num / L is 0 or 1/2 for a 2-torsion class
      mpz_class twice = 2 * num;
      if (!mpz_divisible_p(twice.get_mpz_t(), big_l.get_mpz_t())) {
        fail(ErrorCode::InvalidInput, "2-torsion class has unexpected denominator");
      }
      mpz_class ratio;
      mpz_divexact(ratio.get_mpz_t(), twice.get_mpz_t(), big_l.get_mpz_t());
      if (mpz_odd_p(ratio.get_mpz_t())) kernel.insert(primes[r]);
    }
    if (!kernel.empty()) torsion_kernels.push_back(std::move(kernel));
  }

  if (torsion_kernels.size() > 20) {
    fail(ErrorCode::BudgetExceeded, "2-torsion rank too large to enumerate");
  }

  // Count square classes whose quadratic field embeds in Q(zeta_U).
  unsigned long embedded = 0;
  size_t tcount = torsion_kernels.size();
  for (unsigned long mask = 0; mask < (1ul << tcount); ++mask) {
    std::set<mpz_class> kernel;
    for (size_t b = 0; b < tcount; ++b) {
      if (!(mask & (1ul << b))) continue;
      std::set<mpz_class> sym;
      std::set_symmetric_difference(kernel.begin(), kernel.end(), torsion_kernels[b].begin(),
                                    torsion_kernels[b].end(),
                                    std::inserter(sym, sym.begin()));
      kernel = std::move(sym);
    }
    if (kernel.empty()) {
      ++embedded;  // the trivial class
      continue;
    }
    mpz_class s = 1;
    for (const auto& p : kernel) s *= p;
    mpz_class cond = (s % 4 == 1) ? s : mpz_class(4 * s);
    if (cond.fits_ulong_p() && cyclo % cond.get_ui() == 0) ++embedded;
  }

  if (phi_u % embedded != 0) {
    fail(ErrorCode::InvalidInput, "cyclotomic correction is not integral");
  }
  return index * (phi_u / embedded);
}

}  // namespace northcott
