#include "speciallocus/ball.hpp"

#include <algorithm>

#include "speciallocus/errors.hpp"

namespace speciallocus {

namespace {

// Bound on the round-to-nearest error committed when producing x.
Mag rounding_error(const Real& x) {
  if (x.is_zero()) return Mag::zero();
  return Mag::pow2(x.exponent() - static_cast<long>(x.prec()));
}

Mag mid_abs_upper(const Real& re, const Real& im) {
  Mag m;
  mpfr_hypot(m.get(), re.get(), im.get(), MPFR_RNDU);
  return m;
}

Mag mid_abs_lower(const Real& re, const Real& im) {
  Mag m;
  mpfr_hypot(m.get(), re.get(), im.get(), MPFR_RNDD);
  return m;
}

}  // namespace

CBall CBall::from_si(long x, mpfr_prec_t prec) {
  CBall b(prec);
  if (mpfr_set_si(b.re_.get(), x, MPFR_RNDN) != 0) b.rad_ = rounding_error(b.re_);
  return b;
}

CBall CBall::from_mpz(const mpz_class& x, mpfr_prec_t prec) {
  CBall b(prec);
  int inexact = mpfr_set_z(b.re_.get(), x.get_mpz_t(), MPFR_RNDN);
  if (inexact != 0) b.rad_ = rounding_error(b.re_);
  return b;
}

CBall CBall::from_complex(const Complex& z, mpfr_prec_t prec) {
  CBall b(prec);
  int i1 = mpfr_set(b.re_.get(), z.re.get(), MPFR_RNDN);
  int i2 = mpfr_set(b.im_.get(), z.im.get(), MPFR_RNDN);
  if (i1) b.rad_ += rounding_error(b.re_);
  if (i2) b.rad_ += rounding_error(b.im_);
  return b;
}

Mag CBall::abs_upper() const { return mid_abs_upper(re_, im_) + rad_; }

Mag CBall::abs_lower() const {
  Mag m = mid_abs_lower(re_, im_);
  Mag out;
  mpfr_sub(out.get(), m.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(out.get()) < 0) return Mag::zero();
  return out;
}

bool CBall::contains_zero() const { return !(rad_ < mid_abs_lower(re_, im_)); }

std::optional<mpz_class> CBall::certified_integer() const {
  if (!rad_.is_finite()) return std::nullopt;
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), re_.get(), MPFR_RNDN);
  Real diff(std::max<mpfr_prec_t>(prec(), static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2) + 8)));
  mpfr_sub_z(diff.get(), re_.get(), n.get_mpz_t(), MPFR_RNDN);  // exact at this precision
  Mag quarter = Mag::pow2(-2);
  Mag dre = Mag::abs_of(diff.get()) + rad_;
  Mag dim = Mag::abs_of(im_.get()) + rad_;
  if (dre < quarter && dim < quarter) return n;
  return std::nullopt;
}

std::string CBall::to_string(int digits) const {
  return speciallocus::to_string(mid(), digits) + " +/- " + std::to_string(rad_.to_double());
}

CBall operator+(const CBall& a, const CBall& b) {
  CBall r(std::max(a.prec(), b.prec()));
  mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_ + rounding_error(r.re_) + rounding_error(r.im_);
  return r;
}

CBall operator-(const CBall& a, const CBall& b) {
  CBall r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_ + rounding_error(r.re_) + rounding_error(r.im_);
  return r;
}

CBall operator-(const CBall& a) {
  CBall r(a.prec());
  mpfr_neg(r.re_.get(), a.re_.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), a.im_.get(), MPFR_RNDN);
  r.rad_ = a.rad_;
  return r;
}

CBall operator*(const CBall& a, const CBall& b) {
  CBall r(std::max(a.prec(), b.prec()));
  mpfr_fmms(r.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(r.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  Mag am = mid_abs_upper(a.re_, a.im_);
  Mag bm = mid_abs_upper(b.re_, b.im_);
  r.rad_ = am * b.rad_ + bm * a.rad_ + a.rad_ * b.rad_ + rounding_error(r.re_) +
           rounding_error(r.im_);
  return r;
}

CBall inv(const CBall& b) {
  mpfr_prec_t p = b.prec();
  Mag lower = mid_abs_lower(b.re_, b.im_);
  if (!(b.rad_ < lower)) throw PrecisionError("ball inversion: ball contains zero");
  Real n2(p + 16);
  mpfr_fmma(n2.get(), b.re_.get(), b.re_.get(), b.im_.get(), b.im_.get(), MPFR_RNDN);
  CBall r(p);
  mpfr_div(r.re_.get(), b.re_.get(), n2.get(), MPFR_RNDN);
  mpfr_div(r.im_.get(), b.im_.get(), n2.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
  Mag inv_abs = Mag::from_double(1.0).div_lower(lower);
  Mag gap;
  mpfr_sub(gap.get(), lower.get(), b.rad_.get(), MPFR_RNDD);
  // |1/b' - 1/b| <= r / (|b| (|b| - r))
  Mag prop = b.rad_.div_lower(lower).div_lower(gap);
  r.rad_ = prop + inv_abs * Mag::pow2(3 - static_cast<long>(p));
  return r;
}

CBall mul_si(const CBall& a, long k) {
  CBall r(a.prec());
  mpfr_mul_si(r.re_.get(), a.re_.get(), k, MPFR_RNDN);
  mpfr_mul_si(r.im_.get(), a.im_.get(), k, MPFR_RNDN);
  r.rad_ = a.rad_.mul_d(static_cast<double>(k < 0 ? -k : k)) + rounding_error(r.re_) +
           rounding_error(r.im_);
  return r;
}

CBall mul_mpz(const CBall& a, const mpz_class& k) {
  CBall r(a.prec());
  mpfr_mul_z(r.re_.get(), a.re_.get(), k.get_mpz_t(), MPFR_RNDN);
  mpfr_mul_z(r.im_.get(), a.im_.get(), k.get_mpz_t(), MPFR_RNDN);
  Mag km;
  mpz_class ka = abs(k);
  mpfr_set_z(km.get(), ka.get_mpz_t(), MPFR_RNDU);
  r.rad_ = a.rad_ * km + rounding_error(r.re_) + rounding_error(r.im_);
  return r;
}

CBall sub_si(const CBall& a, long k) {
  CBall r(a.prec());
  mpfr_sub_si(r.re_.get(), a.re_.get(), k, MPFR_RNDN);
  mpfr_set(r.im_.get(), a.im_.get(), MPFR_RNDN);
  r.rad_ = a.rad_ + rounding_error(r.re_);
  return r;
}

CBall exp_2pi_i(const CBall& tau) {
  mpfr_prec_t p = tau.prec();
  Real twopi(p + 8);
  mpfr_const_pi(twopi.get(), MPFR_RNDN);
  mpfr_mul_2ui(twopi.get(), twopi.get(), 1, MPFR_RNDN);
  Real a(p + 8), b(p + 8);
  mpfr_mul(a.get(), twopi.get(), tau.re_.get(), MPFR_RNDN);
  mpfr_mul(b.get(), twopi.get(), tau.im_.get(), MPFR_RNDN);
  mpfr_neg(b.get(), b.get(), MPFR_RNDN);
  Real m(p + 8), s(p + 8), c(p + 8);
  mpfr_exp(m.get(), b.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), a.get(), MPFR_RNDN);
  CBall q(p);
  mpfr_mul(q.re_.get(), m.get(), c.get(), MPFR_RNDN);
  mpfr_mul(q.im_.get(), m.get(), s.get(), MPFR_RNDN);
  Mag qabs = Mag::abs_of(m.get());
  // argument errors of a, b plus function and product roundings
  Mag argsize = Mag::abs_of(a.get()) + Mag::abs_of(b.get());
  Mag mid_err = qabs * (argsize * Mag::pow2(3 - static_cast<long>(p)) + Mag::pow2(5 - static_cast<long>(p)));
  // |q(t') - q(t)| <= 2 pi r |q| e^{2 pi r}
  Mag twopi_r = tau.rad_.mul_d(6.2831853071795866);
  Mag growth;
  mpfr_exp(growth.get(), twopi_r.get(), MPFR_RNDU);
  q.rad_ = mid_err + twopi_r * qabs * growth + rounding_error(q.re_) + rounding_error(q.im_);
  return q;
}

}  // namespace speciallocus
