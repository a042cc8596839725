#pragma once

// Exact reals of the form sum_i c_i * log(p_i) with rational c_i and distinct
// primes p_i, stored as a finite map prime -> coefficient. Logs of distinct
// primes are linearly independent over Q (unique factorization), so the map is
// a canonical form: equality is structural, and a nonzero element has nonzero
// value, which makes certified sign decisions by interval refinement
// terminate. Heights of rationals and of radical monomials live here exactly.

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>

#include "northcott/errors.hpp"
#include "northcott/mpfr_interval.hpp"
#include "northcott/primes.hpp"

namespace northcott {

enum class Cmp { Less = -1, Equal = 0, Greater = 1 };

class LogLinear {
 public:
  using Terms = std::map<mpz_class, mpq_class>;

  LogLinear() = default;

  // coeff * log(base) for an integer base >= 1, expanded over the base's
  // prime factorization. ll_from(1/3, 8) is log 2.
  static LogLinear from(const mpq_class& coeff, const mpz_class& base) {
    if (base < 1) fail(ErrorCode::InvalidBase, "log base must be a positive integer");
    LogLinear r;
    if (coeff == 0 || base == 1) return r;
    for (const auto& [p, e] : factor(base)) {
      mpq_class c = coeff * mpq_class(e);
      c.canonicalize();
      r.add_term(p, c);
    }
    return r;
  }

  // log p for p already known prime (no factorization).
  static LogLinear log_of_prime(const mpz_class& p, const mpq_class& coeff = 1) {
    LogLinear r;
    r.add_term(p, coeff);
    return r;
  }

  // log q for a positive rational q.
  static LogLinear log_of_rational(const mpq_class& q) {
    if (q <= 0) fail(ErrorCode::InvalidBase, "log of a non-positive rational");
    LogLinear r = from(1, mpz_class(q.get_num()));
    r -= from(1, mpz_class(q.get_den()));
    return r;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const mpz_class& p, const mpq_class& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LogLinear& operator+=(const LogLinear& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }

  LogLinear& operator-=(const LogLinear& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, mpq_class(-c));
    return *this;
  }

  LogLinear& operator*=(const mpq_class& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) {
      c *= s;
      c.canonicalize();
    }
    return *this;
  }

  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
  friend LogLinear operator*(LogLinear a, const mpq_class& s) { return a *= s; }
  friend LogLinear operator*(const mpq_class& s, LogLinear a) { return a *= s; }
  friend LogLinear operator-(const LogLinear& a) { return a * mpq_class(-1); }

  friend bool operator==(const LogLinear& a, const LogLinear& b) { return a.terms_ == b.terms_; }

  MpfrInterval eval(mpfr_prec_t prec) const {
    MpfrInterval acc(prec);
    for (const auto& [p, c] : terms_) {
      acc = iv_add(acc, iv_mul(MpfrInterval::from_q(c, prec), MpfrInterval::log_z(p, prec)));
    }
    return acc;
  }

  // Certified sign. Structural zero is the only way to be zero, so interval
  // refinement on a nonzero element always terminates; the precision cap is a
  // defensive guard, not a mathematical boundary.
  int sign() const {
    if (terms_.empty()) return 0;
    for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t(1) << 22); prec *= 2) {
      int s = eval(prec).sign();
      if (s != 0) return s;
    }
    fail(ErrorCode::Undecidable, "sign refinement exceeded precision cap");
  }

  double approx() const { return eval(128).mid(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      mpq_class a = abs(c);
      bool neg = c < 0;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (a != 1) os << a.get_str() << "*";
      os << "log(" << p.get_str() << ")";
      first = false;
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline Cmp ll_compare(const LogLinear& a, const LogLinear& b) {
  LogLinear d = a - b;
  int s = d.sign();
  return s < 0 ? Cmp::Less : (s > 0 ? Cmp::Greater : Cmp::Equal);
}

}  // namespace northcott
