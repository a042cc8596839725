#pragma once

// Exact arithmetic for the quantities this library compares: finite sums
//
//     sum_sigma  sigma * ( q_sigma + sum_p c_{sigma,p} * log p )
//
// where each sigma is a radical monomial prod p^{e_p} with rational exponents
// e_p in (0,1) over distinct primes, q_sigma is rational, and the inner sum is
// a LogLinear. Distinct canonical radicals are linearly independent over Q
// (Besicovitch/Mordell), and 1 together with logs of distinct primes is
// linearly independent over the field of algebraic numbers (Baker), so the
// representation is canonical: a value is zero exactly when it has no parts.
// Nonzero values therefore admit terminating certified sign decisions by
// interval refinement.
//
// Products are only defined when at most one factor carries log terms;
// products of logarithms leave the algebra and are rejected. Quantity wraps a
// Value ratio (for reciprocal-of-height weights) plus a certified-float
// fallback for weights whose values involve logs themselves.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "northcott/errors.hpp"
#include "northcott/loglinear.hpp"
#include "northcott/mpfr_interval.hpp"
#include "northcott/primes.hpp"

namespace northcott {

// Sorted (prime, exponent) pairs, exponents in (0,1). Empty = rational part.
using RadicalSig = std::vector<std::pair<mpz_class, mpq_class>>;

namespace detail {

// Split a rational exponent f into integer floor n and fractional part r in [0,1).
inline void split_exponent(const mpq_class& f, mpz_class& n, mpq_class& r) {
  mpz_fdiv_q(n.get_mpz_t(), f.get_num().get_mpz_t(), f.get_den().get_mpz_t());
  r = f - mpq_class(n);
  r.canonicalize();
}

inline mpq_class pow_q(const mpz_class& p, const mpz_class& n) {
  mpz_class a;
  unsigned long e = mpz_get_ui(mpz_class(abs(n)).get_mpz_t());
  mpz_pow_ui(a.get_mpz_t(), p.get_mpz_t(), e);
  mpq_class r;
  if (n >= 0) {
    r = mpq_class(a);
  } else {
    r = mpq_class(1) / mpq_class(a);
  }
  r.canonicalize();
  return r;
}

}  // namespace detail

class Value {
 public:
  struct Part {
    mpq_class constant = 0;
    LogLinear logs;
    bool empty() const { return constant == 0 && logs.is_zero(); }
  };

  Value() = default;

  static Value from_rational(const mpq_class& q) {
    Value v;
    v.accumulate({}, q, LogLinear());
    return v;
  }

  static Value from_loglinear(const LogLinear& l) {
    Value v;
    v.accumulate({}, 0, l);
    return v;
  }

  // prod p^{e_p} over a map of (not necessarily fractional) rational exponents.
  static Value radical_factored(const std::map<mpz_class, mpq_class>& exps) {
    mpq_class coef = 1;
    RadicalSig sig;
    for (const auto& [p, e] : exps) {
      if (e == 0) continue;
      mpz_class n;
      mpq_class r;
      detail::split_exponent(e, n, r);
      if (n != 0) coef *= detail::pow_q(p, n);
      if (r != 0) sig.emplace_back(p, r);
    }
    coef.canonicalize();
    Value v;
    v.accumulate(sig, coef, LogLinear());
    return v;
  }

  // base^expo for a positive rational base.
  static Value radical(const mpq_class& base, const mpq_class& expo) {
    if (base <= 0) fail(ErrorCode::InvalidBase, "radical base must be positive");
    std::map<mpz_class, mpq_class> exps;
    for (const auto& [p, e] : factor(mpz_class(base.get_num()))) {
      exps[p] += mpq_class(e) * expo;
    }
    for (const auto& [p, e] : factor(mpz_class(base.get_den()))) {
      exps[p] -= mpq_class(e) * expo;
    }
    for (auto& [p, e] : exps) e.canonicalize();
    return radical_factored(exps);
  }

  const std::map<RadicalSig, Part>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  bool is_log_free() const {
    for (const auto& [sig, part] : parts_) {
      if (!part.logs.is_zero()) return false;
    }
    return true;
  }

  bool is_rational() const {
    return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first.empty() &&
                              parts_.begin()->second.logs.is_zero());
  }

  // The rational this value equals, if it is one.
  std::optional<mpq_class> as_rational() const {
    if (parts_.empty()) return mpq_class(0);
    if (is_rational()) return parts_.begin()->second.constant;
    return std::nullopt;
  }

  // The pure LogLinear this value equals, if it is one.
  std::optional<LogLinear> as_loglinear() const {
    if (parts_.empty()) return LogLinear();
    if (parts_.size() == 1 && parts_.begin()->first.empty() &&
        parts_.begin()->second.constant == 0) {
      return parts_.begin()->second.logs;
    }
    return std::nullopt;
  }

  Value& operator+=(const Value& o) {
    for (const auto& [sig, part] : o.parts_) accumulate(sig, part.constant, part.logs);
    return *this;
  }

  Value& operator-=(const Value& o) {
    for (const auto& [sig, part] : o.parts_) {
      accumulate(sig, mpq_class(-part.constant), -part.logs);
    }
    return *this;
  }

  Value& operator*=(const mpq_class& s) {
    if (s == 0) {
      parts_.clear();
      return *this;
    }
    for (auto& [sig, part] : parts_) {
      part.constant *= s;
      part.constant.canonicalize();
      part.logs *= s;
    }
    return *this;
  }

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const mpq_class& s) { return a *= s; }
  friend Value operator*(const mpq_class& s, Value a) { return a *= s; }
  friend Value operator-(const Value& a) { return a * mpq_class(-1); }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    auto ia = a.parts_.begin();
    auto ib = b.parts_.begin();
    for (; ia != a.parts_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second.constant != ib->second.constant ||
          !(ia->second.logs == ib->second.logs)) {
        return false;
      }
    }
    return true;
  }

  // Product; defined only when at most one factor carries log terms per part
  // pair (otherwise the result would hold products of logarithms, which have
  // no canonical form here).
  friend Value operator*(const Value& a, const Value& b) {
    Value out;
    for (const auto& [s1, p1] : a.parts_) {
      for (const auto& [s2, p2] : b.parts_) {
        if (!p1.logs.is_zero() && !p2.logs.is_zero()) {
          fail(ErrorCode::UnsupportedProduct, "product of two logarithmic values");
        }
        std::map<mpz_class, mpq_class> exps;
        for (const auto& [p, e] : s1) exps[p] += e;
        for (const auto& [p, e] : s2) exps[p] += e;
        mpq_class coef = 1;
        RadicalSig sig;
        for (const auto& [p, e] : exps) {
          if (e == 0) continue;
          mpz_class n;
          mpq_class r;
          detail::split_exponent(e, n, r);
          if (n != 0) coef *= detail::pow_q(p, n);
          if (r != 0) sig.emplace_back(p, r);
        }
        coef.canonicalize();
        mpq_class c = coef * p1.constant * p2.constant;
        c.canonicalize();
        // At most one of the two log parts is nonzero here.
        LogLinear combined = mpq_class(coef * p2.constant) * p1.logs;
        combined += mpq_class(coef * p1.constant) * p2.logs;
        out.accumulate(sig, c, combined);
      }
    }
    return out;
  }

  MpfrInterval eval(mpfr_prec_t prec) const {
    MpfrInterval acc(prec);
    for (const auto& [sig, part] : parts_) {
      MpfrInterval inner =
          iv_add(MpfrInterval::from_q(part.constant, prec), part.logs.eval(prec));
      if (!sig.empty()) {
        MpfrInterval expo(prec);
        for (const auto& [p, e] : sig) {
          expo = iv_add(expo, iv_mul(MpfrInterval::from_q(e, prec), MpfrInterval::log_z(p, prec)));
        }
        inner = iv_mul(iv_exp(expo), inner);
      }
      acc = iv_add(acc, inner);
    }
    return acc;
  }

  // Certified sign; zero is structural, so refinement terminates on nonzero
  // values by the independence results quoted above.
  int sign() const {
    if (parts_.empty()) return 0;
    if (auto q = as_rational()) return mpq_sgn(q->get_mpq_t());
    for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t(1) << 22); prec *= 2) {
      int s = eval(prec).sign();
      if (s != 0) return s;
    }
    fail(ErrorCode::Undecidable, "sign refinement exceeded precision cap");
  }

  double approx() const { return eval(192).mid(); }

  std::string to_string() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const mpq_class& coeff, const std::string& symbolic) {
      mpq_class a = abs(coeff);
      bool neg = coeff < 0;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (symbolic.empty()) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << "*";
        os << symbolic;
      }
      first = false;
    };
    for (const auto& [sig, part] : parts_) {
      std::string sig_str;
      for (const auto& [p, e] : sig) {
        if (!sig_str.empty()) sig_str += "*";
        sig_str += p.get_str() + "^(" + e.get_str() + ")";
      }
      if (part.constant != 0) emit(part.constant, sig_str);
      for (const auto& [p, c] : part.logs.terms()) {
        std::string sym = sig_str.empty() ? "" : sig_str + "*";
        sym += "log(" + p.get_str() + ")";
        emit(c, sym);
      }
    }
    return os.str();
  }

 private:
  void accumulate(const RadicalSig& sig, const mpq_class& constant, const LogLinear& logs) {
    if (constant == 0 && logs.is_zero()) return;
    auto it = parts_.find(sig);
    if (it == parts_.end()) it = parts_.emplace(sig, Part{}).first;
    it->second.constant += constant;
    it->second.constant.canonicalize();
    it->second.logs += logs;
    if (it->second.empty()) parts_.erase(it);
  }

  std::map<RadicalSig, Part> parts_;
};

// A positive-denominator ratio of Values, or a certified interval snapshot
// for quantities outside the exact algebra (log-valued weights). Exact
// operations stay exact; once an operand is approximate the result is an
// interval and comparisons become conservative.
class Quantity {
 public:
  Quantity() : exact_(true), num_(), den_(Value::from_rational(1)), box_(64) {}

  static Quantity from_value(Value v) {
    Quantity q;
    q.num_ = std::move(v);
    return q;
  }

  static Quantity from_rational(const mpq_class& r) { return from_value(Value::from_rational(r)); }

  static Quantity from_loglinear(const LogLinear& l) {
    return from_value(Value::from_loglinear(l));
  }

  static Quantity ratio(Value num, Value den) {
    if (den.sign() <= 0) fail(ErrorCode::InvalidInput, "Quantity denominator must be positive");
    Quantity q;
    q.num_ = std::move(num);
    q.den_ = std::move(den);
    return q;
  }

  static Quantity approx_box(MpfrInterval box) {
    Quantity q;
    q.exact_ = false;
    q.box_ = std::move(box);
    return q;
  }

  bool is_exact() const { return exact_; }
  const Value& num() const { return num_; }
  const Value& den() const { return den_; }

  bool den_is_one() const {
    auto r = den_.as_rational();
    return r && *r == 1;
  }

  // The exact Value this equals (requires denominator 1).
  const Value& value() const {
    if (!exact_ || !den_is_one()) {
      fail(ErrorCode::VariantMismatch, "quantity is not a plain exact value");
    }
    return num_;
  }

  std::optional<mpq_class> as_rational() const {
    if (!exact_) return std::nullopt;
    auto n = num_.as_rational();
    auto d = den_.as_rational();
    if (n && d) {
      mpq_class r = *n / *d;
      r.canonicalize();
      return r;
    }
    return std::nullopt;
  }

  MpfrInterval eval(mpfr_prec_t prec) const {
    if (!exact_) return box_;
    if (den_is_one()) return num_.eval(prec);
    // Refine until the denominator interval clears zero (den > 0 exactly).
    for (mpfr_prec_t p = prec; p <= (mpfr_prec_t(1) << 22); p *= 2) {
      MpfrInterval d = den_.eval(p);
      if (d.sign() > 0) return iv_div(num_.eval(p), d);
    }
    fail(ErrorCode::Undecidable, "denominator interval refinement exceeded cap");
  }

  double approx() const { return eval(192).mid(); }

  friend Quantity operator+(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) {
      if (a.den_is_one() && b.den_is_one()) return from_value(a.num_ + b.num_);
      return ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    return approx_box(iv_add(a.eval(512), b.eval(512)));
  }

  friend Quantity operator-(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) {
      if (a.den_is_one() && b.den_is_one()) return from_value(a.num_ - b.num_);
      return ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    return approx_box(iv_sub(a.eval(512), b.eval(512)));
  }

  friend Quantity operator*(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) return ratio_or_plain(a.num_ * b.num_, a.den_ * b.den_);
    return approx_box(iv_mul(a.eval(512), b.eval(512)));
  }

  friend Quantity operator*(const Quantity& a, const mpq_class& s) {
    if (a.exact_) return ratio_or_plain(a.num_ * s, a.den_);
    return approx_box(iv_mul(a.box_, MpfrInterval::from_q(s, 512)));
  }

  friend Quantity operator*(const mpq_class& s, const Quantity& a) { return a * s; }

  friend Quantity operator/(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) {
      int s = b.num_.sign();
      if (s == 0) fail(ErrorCode::InvalidInput, "division by zero quantity");
      Value num = a.num_ * b.den_;
      Value den = a.den_ * b.num_;
      if (s < 0) {
        num = -num;
        den = -den;
      }
      return ratio_or_plain(std::move(num), std::move(den));
    }
    return approx_box(iv_div(a.eval(512), b.eval(512)));
  }

  // Certified sign; for exact quantities this is exact, for approximate ones
  // it may report 0 when the snapshot interval straddles zero.
  int sign_or_zero() const {
    if (exact_) return num_.sign();
    return box_.sign();
  }

  // Certified three-way comparison. Exact pairs decide exactly (by
  // cross-multiplication when legal, else by interval refinement, which
  // terminates unless the two values are genuinely equal outside the exact
  // algebra; the cap turns that into Undecidable). Approximate pairs decide
  // conservatively or return nullopt.
  friend std::optional<Cmp> try_compare(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) {
      try {
        Value diff = a.num_ * b.den_ - b.num_ * a.den_;
        int s = diff.sign();
        return s < 0 ? Cmp::Less : (s > 0 ? Cmp::Greater : Cmp::Equal);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedProduct) throw;
      }
    }
    // Interval route: equality is not certifiable here, only strict orderings.
    for (mpfr_prec_t prec = 128; prec <= 1 << 14; prec *= 2) {
      MpfrInterval d = iv_sub(a.eval(prec), b.eval(prec));
      int s = d.sign();
      if (s != 0) return s < 0 ? Cmp::Less : Cmp::Greater;
      if (!a.exact_ || !b.exact_) break;  // snapshots cannot refine further
    }
    return std::nullopt;
  }

  friend Cmp compare(const Quantity& a, const Quantity& b) {
    auto c = try_compare(a, b);
    if (!c) fail(ErrorCode::Undecidable, "comparison outside the certified range");
    return *c;
  }

  friend bool operator<=(const Quantity& a, const Quantity& b) {
    return compare(a, b) != Cmp::Greater;
  }
  friend bool operator<(const Quantity& a, const Quantity& b) {
    return compare(a, b) == Cmp::Less;
  }
  friend bool operator>=(const Quantity& a, const Quantity& b) {
    return compare(a, b) != Cmp::Less;
  }
  friend bool operator>(const Quantity& a, const Quantity& b) {
    return compare(a, b) == Cmp::Greater;
  }

  std::string to_string() const {
    if (!exact_) {
      std::ostringstream os;
      os << "~" << box_.mid();
      return os.str();
    }
    if (den_is_one()) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }

 private:
  static Quantity ratio_or_plain(Value num, Value den) {
    auto d = den.as_rational();
    if (d) {
      if (*d <= 0) fail(ErrorCode::InvalidInput, "Quantity denominator must be positive");
      return from_value(num * mpq_class(1 / *d));
    }
    return ratio(std::move(num), std::move(den));
  }

  bool exact_;
  Value num_, den_;
  MpfrInterval box_;
};

// Smallest prime p with log p in the window [x, y] (sides opened by the
// strict flags), i.e. p in [e^x, e^y]. Candidate primes are compared against
// the thresholds in log space, never through rounded integer cutoffs.
inline std::optional<mpz_class> smallest_prime_in_exp(const Quantity& x, const Quantity& y,
                                                      bool strict_lo = false,
                                                      bool strict_hi = false) {
  // Find a certified starting integer a touch below e^x.
  MpfrInterval window(128);
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    window = iv_exp(x.eval(prec));
    if (window.narrower_than_2exp(0)) break;
    if (prec > (mpfr_prec_t(1) << 22)) {
      fail(ErrorCode::BudgetExceeded, "exp window needs more precision than the cap");
    }
  }
  mpz_class start = window.floor_lo() - 1;
  if (start < 1) start = 1;
  mpz_class p = next_prime_above(start);
  for (;;) {
    Quantity logp = Quantity::from_loglinear(LogLinear::log_of_prime(p));
    Cmp lo_cmp = compare(logp, x);
    if (lo_cmp == Cmp::Less || (strict_lo && lo_cmp == Cmp::Equal)) {
      p = next_prime_above(p);
      continue;
    }
    Cmp hi_cmp = compare(logp, y);
    if (hi_cmp == Cmp::Greater || (strict_hi && hi_cmp == Cmp::Equal)) return std::nullopt;
    return p;
  }
}

}  // namespace northcott
