#pragma once

// Thin interval arithmetic over MPFR with outward directed rounding. Every
// operation encloses the true real result, so a sign read off a computed
// interval is a certificate. Callers refine by re-evaluating their expression
// at doubled precision; intervals themselves are throwaway snapshots.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace northcott {

class MpfrInterval {
 public:
  explicit MpfrInterval(mpfr_prec_t prec = 128) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_ui(lo_, 0, MPFR_RNDD);
    mpfr_set_ui(hi_, 0, MPFR_RNDU);
  }

  MpfrInterval(const MpfrInterval& o) {
    mpfr_init2(lo_, o.prec());
    mpfr_init2(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  MpfrInterval(MpfrInterval&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  MpfrInterval& operator=(MpfrInterval o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }

  ~MpfrInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_prec_t prec() const { return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_)); }

  static MpfrInterval from_q(const mpq_class& q, mpfr_prec_t prec) {
    MpfrInterval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static MpfrInterval from_z(const mpz_class& z, mpfr_prec_t prec) {
    MpfrInterval r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  // log n for an integer n >= 1.
  static MpfrInterval log_z(const mpz_class& z, mpfr_prec_t prec) {
    MpfrInterval r = from_z(z, prec);
    mpfr_log(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, r.hi_, MPFR_RNDU);
    return r;
  }

  friend MpfrInterval iv_add(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend MpfrInterval iv_sub(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend MpfrInterval iv_neg(const MpfrInterval& a) {
    MpfrInterval r(a.prec());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend MpfrInterval iv_mul(const MpfrInterval& a, const MpfrInterval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    MpfrInterval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    bool first = true;
    auto consider = [&](const mpfr_t& x, const mpfr_t& y) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    };
    consider(a.lo_, b.lo_);
    consider(a.lo_, b.hi_);
    consider(a.hi_, b.lo_);
    consider(a.hi_, b.hi_);
    mpfr_clear(t);
    return r;
  }

  // Division with a denominator interval strictly bounded away from zero.
  friend MpfrInterval iv_div(const MpfrInterval& a, const MpfrInterval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    MpfrInterval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    bool first = true;
    auto consider = [&](const mpfr_t& x, const mpfr_t& y) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    };
    consider(a.lo_, b.lo_);
    consider(a.lo_, b.hi_);
    consider(a.hi_, b.lo_);
    consider(a.hi_, b.hi_);
    mpfr_clear(t);
    return r;
  }

  friend MpfrInterval iv_exp(const MpfrInterval& a) {
    MpfrInterval r(a.prec());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  // log over an interval with positive lower endpoint.
  friend MpfrInterval iv_log(const MpfrInterval& a) {
    MpfrInterval r(a.prec());
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  // Certified sign: +1 / -1 only when the whole interval lies on that side.
  int sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

  bool is_positive() const { return sign() > 0; }

  double mid() const {
    mpfr_t m;
    mpfr_init2(m, prec());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
  }

  // Directed-rounding double endpoints (lo rounded down, hi rounded up), so
  // a plain double comparison against them stays a certificate.
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  mpz_class floor_lo() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
  }

  mpz_class ceil_hi() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDU);
    return z;
  }

  // True when hi - lo <= 2^-bits (absolute width test).
  bool narrower_than_2exp(long bits) const {
    mpfr_t w;
    mpfr_init2(w, prec());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    bool ok = mpfr_sgn(w) <= 0 || mpfr_cmp_ui_2exp(w, 1, -bits) <= 0;
    mpfr_clear(w);
    return ok;
  }

 private:
  mpfr_t lo_, hi_;
};

}  // namespace northcott
