#pragma once

// Integer primality and factorization on top of GMP.
//
// Primality below 3,317,044,064,679,887,385,961,981 is decided by the
// deterministic Miller-Rabin witness set {2,...,37}; above that bound the test
// runs 64 witnesses drawn from a generator seeded by the candidate itself, so
// results are reproducible across runs but formally probabilistic (error
// probability below 4^-64).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "northcott/errors.hpp"

namespace northcott {

using Factorization = std::map<mpz_class, unsigned long>;

namespace detail {

inline const mpz_class& mr_deterministic_bound() {
  static const mpz_class bound("3317044064679887385961981");
  return bound;
}

// One strong-pseudoprime round for witness a; n odd, n > 3, n - 1 = d * 2^s.
inline bool mr_round(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

inline bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  static const unsigned long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                               41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (unsigned long p : small_primes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  if (n < detail::mr_deterministic_bound()) {
    for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
      if (!detail::mr_round(n, mpz_class(a), d, s)) return false;
    }
    return true;
  }

  // Screen with two fixed witnesses before the full battery; composites that
  // survive trial division almost never survive these.
  for (unsigned long a : {2ul, 3ul}) {
    if (!detail::mr_round(n, mpz_class(a), d, s)) return false;
  }
  gmp_randstate_t st;
  gmp_randinit_mt(st);
  gmp_randseed(st, n.get_mpz_t());
  mpz_class a;
  bool ok = true;
  for (int i = 0; i < 64 && ok; ++i) {
    mpz_class span = n - 3;
    mpz_urandomm(a.get_mpz_t(), st, span.get_mpz_t());
    a += 2;  // witness in [2, n-2]
    ok = detail::mr_round(n, a, d, s);
  }
  gmp_randclear(st);
  return ok;
}

// Smallest prime strictly greater than n. mpz_nextprime never skips a true
// prime, so confirming its candidates with is_prime keeps the walk exact.
inline mpz_class next_prime_above(const mpz_class& n) {
  mpz_class p = n;
  for (;;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (is_prime(p)) return p;
  }
}

// Smallest prime in the integer window; bounds inclusive unless the strict
// flag opens that side. Returns nullopt when the window holds no prime.
inline std::optional<mpz_class> smallest_prime_in(const mpz_class& lo, const mpz_class& hi,
                                                  bool strict_lo = false, bool strict_hi = false) {
  mpz_class start = lo;
  if (strict_lo) start += 1;
  if (start < 2) start = 2;
  mpz_class p;
  if (start >= 2 && is_prime(start)) {
    p = start;
  } else {
    p = next_prime_above(start);
  }
  if (p > hi || (strict_hi && p == hi)) return std::nullopt;
  return p;
}

namespace detail {

inline mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
  // Brent's cycle variant of Pollard rho; n odd composite, not a prime power
  // handled specially by the caller loop (retry with different constants).
  mpz_class y = seed % n, c = (seed * 2654435761ul + 1) % n, m = 128;
  if (c == 0) c = 1;
  mpz_class g = 1, r = 1, q = 1, x, ys;
  while (g == 1) {
    x = y;
    for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
    mpz_class k = 0;
    while (k < r && g == 1) {
      ys = y;
      mpz_class lim = std::min(m, mpz_class(r - k));
      for (mpz_class i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      mpz_class diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

inline void factor_into(mpz_class n, Factorization& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  // Perfect powers split for free.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        Factorization sub;
        factor_into(root, sub);
        for (auto& [p, e] : sub) out[p] += e * k;
        return;
      }
    }
  }
  mpz_class d = n;
  for (unsigned long seed = 3; d == n; ++seed) d = pollard_brent(n, seed);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of n >= 1 (empty map for 1).
inline Factorization factor(const mpz_class& n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "factor requires n >= 1");
  Factorization out;
  mpz_class rem = n;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
    }
  }
  for (unsigned long d = 17; d <= 1000000ul && rem > 1; d += 2) {
    mpz_class dd(d);
    if (dd * dd > rem) break;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), d)) {
      ++out[dd];
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), d);
    }
  }
  detail::factor_into(rem, out);
  return out;
}

}  // namespace northcott
