#pragma once

// Exact logarithmic heights.
//
//   - weil_height: the absolute Weil height of a radical monomial, computed
//     from its exponent vector (the monomial raised to its rational-power
//     order is a plain fraction, and heights scale linearly under integer
//     powers; root-of-unity factors never change any absolute value).
//   - projective_height: heights of tuples, either all-rational or of the
//     twisted shape (r_i · zeta^{k_i} · beta^{e_i}) with a common positive
//     real radical beta and e_i in {0, 1}. Every archimedean embedding gives
//     the same modulus to such entries, so the height is a finite sum of
//     certified log-linear terms.
//   - h2_height: the variant that uses the Euclidean norm at the archimedean
//     place and the maximum at the finite places; on a coprime integer
//     representative it is exactly (1/2)·log(sum of squares).
//   - weighted_height: w(deg a) · h(a) as an exact or boxed Quantity.

#include <algorithm>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "loglinear.hpp"
#include "radical.hpp"
#include "value.hpp"
#include "weights.hpp"

namespace northcott {

// ---------------------------------------------------------------------------
// Tuple types

struct RationalTuple {
  std::vector<mpq_class> entries;
};

struct TwistedEntry {
  mpq_class scalar;             // r_i (may be 0 or negative)
  unsigned long zeta_exp = 0;   // exponent k_i of the common root of unity
  int beta_exp = 0;             // e_i in {0, 1}
};

struct TwistedRadicalTuple {
  RadicalMonomial beta = RadicalMonomial::one();  // positive real radical
  unsigned long zeta_order = 1;                   // order of the twist root
  std::vector<TwistedEntry> entries;
};

using ProjectiveTuple = std::variant<RationalTuple, TwistedRadicalTuple>;

// ---------------------------------------------------------------------------
// Weil height of a radical monomial

inline LogLinear weil_height(const RadicalMonomial& a) {
  LogLinear pos, neg;
  for (const auto& [p, e] : a.full_exponents()) {
    if (e > 0) {
      pos += LogLinear::log_of_prime(p, e);
    } else {
      neg += LogLinear::log_of_prime(p, -e);
    }
  }
  return ll_compare(pos, neg) == Cmp::Less ? neg : pos;
}

// ---------------------------------------------------------------------------
// Projective heights

namespace heightdetail {

// Coprime integer representative of a rational tuple (rejects the zero tuple).
inline std::vector<mpz_class> integer_representative(const std::vector<mpq_class>& entries) {
  if (entries.empty()) fail(ErrorCode::InvalidTuple, "empty tuple");
  mpz_class l = 1;
  for (const auto& e : entries) {
    mpz_class den = e.get_den();
    l = l / gcd(l, den) * den;
  }
  std::vector<mpz_class> v;
  v.reserve(entries.size());
  mpz_class g = 0;
  for (const auto& e : entries) {
    mpz_class x = e.get_num() * (l / e.get_den());
    g = gcd(g, x);
    v.push_back(x);
  }
  if (g == 0) fail(ErrorCode::InvalidTuple, "zero tuple has no projective height");
  for (auto& x : v) x /= g;
  return v;
}

// p-adic valuations of a nonzero rational, as a prime -> exponent map.
inline std::map<mpz_class, mpq_class> rational_valuations(const mpq_class& r) {
  std::map<mpz_class, mpq_class> val;
  for (const auto& [p, e] : factor(mpz_class(r.get_num() < 0 ? -r.get_num() : r.get_num()))) {
    val[p] += static_cast<long>(e);
  }
  for (const auto& [p, e] : factor(mpz_class(r.get_den()))) {
    val[p] -= static_cast<long>(e);
  }
  return val;
}

}  // namespace heightdetail

inline LogLinear projective_height(const RationalTuple& t) {
  std::vector<mpz_class> v = heightdetail::integer_representative(t.entries);
  mpz_class m = 0;
  for (const auto& x : v) {
    mpz_class a = x < 0 ? mpz_class(-x) : x;
    if (a > m) m = a;
  }
  return LogLinear::log_of_rational(mpq_class(m));
}

inline LogLinear projective_height(const TwistedRadicalTuple& t) {
  if (t.beta.zeta_order() != 1) {
    fail(ErrorCode::InvalidInput, "twist base must be a positive real radical");
  }
  if (t.zeta_order < 1) fail(ErrorCode::InvalidInput, "twist order must be positive");
  if (t.entries.empty()) fail(ErrorCode::InvalidTuple, "empty tuple");
  const auto beta_exps = t.beta.full_exponents();
  LogLinear log_beta = t.beta.log_abs();

  std::vector<std::map<mpz_class, mpq_class>> vals;
  bool any_nonzero = false;
  for (const auto& e : t.entries) {
    if (e.beta_exp != 0 && e.beta_exp != 1) {
      fail(ErrorCode::InvalidInput, "twist exponents must be 0 or 1");
    }
    if (e.scalar == 0) {
      vals.emplace_back();
      continue;
    }
    any_nonzero = true;
    auto v = heightdetail::rational_valuations(e.scalar);
    if (e.beta_exp == 1) {
      for (const auto& [p, be] : beta_exps) v[p] += be;
    }
    vals.push_back(std::move(v));
  }
  if (!any_nonzero) fail(ErrorCode::InvalidTuple, "zero tuple has no projective height");

  // Finite places: each prime contributes -(min valuation) * log p. A prime
  // missing from an entry's map has valuation 0 there.
  std::set<mpz_class> primes;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (t.entries[i].scalar == 0) continue;
    for (const auto& [p, v] : vals[i]) {
      (void)v;
      primes.insert(p);
    }
  }
  LogLinear h;
  for (const auto& p : primes) {
    bool first = true;
    mpq_class mn;
    for (size_t i = 0; i < vals.size(); ++i) {
      if (t.entries[i].scalar == 0) continue;
      mpq_class v = 0;
      auto it = vals[i].find(p);
      if (it != vals[i].end()) v = it->second;
      if (first || v < mn) mn = v;
      first = false;
    }
    if (mn != 0) h += LogLinear::log_of_prime(p, -mn);
  }

  // The archimedean place: every embedding gives |r_i zeta^k beta^e| =
  // |r_i| * beta^e, so one maximum covers them all.
  bool first = true;
  LogLinear arch;
  for (const auto& e : t.entries) {
    if (e.scalar == 0) continue;
    mpq_class a = e.scalar < 0 ? mpq_class(-e.scalar) : e.scalar;
    LogLinear cand = LogLinear::log_of_rational(a);
    if (e.beta_exp == 1) cand += log_beta;
    if (first || ll_compare(arch, cand) == Cmp::Less) arch = cand;
    first = false;
  }
  h += arch;
  return h;
}

inline LogLinear projective_height(const ProjectiveTuple& t) {
  return std::visit([](const auto& u) { return projective_height(u); }, t);
}

// ---------------------------------------------------------------------------
// The h2 height (Euclidean at the archimedean place, max at finite places)

inline LogLinear h2_height(const RationalTuple& t) {
  std::vector<mpz_class> v = heightdetail::integer_representative(t.entries);
  mpz_class s = 0;
  for (const auto& x : v) s += x * x;
  LogLinear h = LogLinear::log_of_rational(mpq_class(s));
  h *= mpq_class(1, 2);
  return h;
}

inline LogLinear h2_height(const ProjectiveTuple& t) {
  if (const auto* r = std::get_if<RationalTuple>(&t)) return h2_height(*r);
  fail(ErrorCode::InvalidInput, "h2 height is provided for rational tuples only");
}

// ---------------------------------------------------------------------------
// Weighted height

inline Quantity weighted_height(const RadicalMonomial& a, const Weight& w) {
  LogLinear h = weil_height(a);
  if (h.is_zero()) return Quantity::from_rational(0);
  return w.eval(mpz_class(a.degree())) * Quantity::from_loglinear(h);
}

}  // namespace northcott
