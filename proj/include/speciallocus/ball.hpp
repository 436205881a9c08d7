#ifndef SPECIALLOCUS_BALL_HPP
#define SPECIALLOCUS_BALL_HPP

// Complex ball arithmetic: an MPFR midpoint with a disk radius.  Every
// operation returns a ball that contains the exact result for all inputs in
// the operand balls, so integers rounded from a ball are certified.

#include <optional>
#include <string>

#include <gmpxx.h>

#include "speciallocus/real.hpp"

namespace speciallocus {

class CBall {
 public:
  explicit CBall(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  CBall(Real re, Real im, Mag rad) : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {}

  static CBall from_si(long x, mpfr_prec_t prec);
  static CBall from_mpz(const mpz_class& x, mpfr_prec_t prec);
  // Rounds the midpoint, so the radius absorbs the conversion error.
  static CBall from_complex(const Complex& z, mpfr_prec_t prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  const Mag& rad() const { return rad_; }
  mpfr_prec_t prec() const { return re_.prec(); }
  Complex mid() const { return Complex(re_, im_); }

  // Upper / lower bounds on |z| over the ball.
  Mag abs_upper() const;
  Mag abs_lower() const;
  bool contains_zero() const;
  void add_error(const Mag& e) { rad_ += e; }

  // Unique integer within distance < 1/4 of every point of the ball, if any.
  std::optional<mpz_class> certified_integer() const;

  std::string to_string(int digits = 30) const;

 private:
  friend CBall operator+(const CBall&, const CBall&);
  friend CBall operator-(const CBall&, const CBall&);
  friend CBall operator*(const CBall&, const CBall&);
  friend CBall operator-(const CBall&);
  friend CBall inv(const CBall&);
  friend CBall mul_si(const CBall&, long);
  friend CBall mul_mpz(const CBall&, const mpz_class&);
  friend CBall sub_si(const CBall&, long);
  friend CBall exp_2pi_i(const CBall&);

  Real re_, im_;
  Mag rad_;
};

CBall operator+(const CBall& a, const CBall& b);
CBall operator-(const CBall& a, const CBall& b);
CBall operator*(const CBall& a, const CBall& b);
CBall operator-(const CBall& a);
CBall inv(const CBall& b);
inline CBall operator/(const CBall& a, const CBall& b) { return a * inv(b); }
CBall mul_si(const CBall& a, long k);
CBall mul_mpz(const CBall& a, const mpz_class& k);
CBall sub_si(const CBall& a, long k);
// exp(2 pi i tau)
CBall exp_2pi_i(const CBall& tau);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_BALL_HPP
