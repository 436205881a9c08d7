#ifndef SPECIALLOCUS_REAL_HPP
#define SPECIALLOCUS_REAL_HPP

// RAII wrappers over MPFR: a real number, a plain complex number and an
// upward-rounded magnitude used as a ball radius.

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace speciallocus {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real from_mpz(const mpz_class& x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real from_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  // Throws DomainError on malformed input.
  static Real from_string(const std::string& s, mpfr_prec_t prec);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;
  std::string to_string(int digits = 30) const;

 private:
  mpfr_t v_;
};

// Non-negative magnitude, every operation rounded upward (or downward for
// explicit lower bounds).  Used as the radius of a ball.
class Mag {
 public:
  static constexpr mpfr_prec_t kPrec = 32;

  Mag() : v_(kPrec) {}
  static Mag zero() { return Mag(); }
  static Mag from_double(double x) {
    Mag m;
    mpfr_set_d(m.v_.get(), x, MPFR_RNDU);
    return m;
  }
  // |x| rounded up.
  static Mag abs_of(mpfr_srcptr x) {
    Mag m;
    mpfr_abs(m.v_.get(), x, MPFR_RNDU);
    return m;
  }
  static Mag pow2(long e) {
    Mag m;
    mpfr_set_ui_2exp(m.v_.get(), 1, e, MPFR_RNDU);
    return m;
  }

  Mag operator+(const Mag& o) const {
    Mag m;
    mpfr_add(m.v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
    return m;
  }
  Mag operator*(const Mag& o) const {
    Mag m;
    mpfr_mul(m.v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
    return m;
  }
  Mag& operator+=(const Mag& o) { return *this = *this + o; }
  Mag& operator*=(const Mag& o) { return *this = *this * o; }
  Mag mul_d(double c) const {
    Mag m;
    mpfr_mul_d(m.v_.get(), v_.get(), c, MPFR_RNDU);
    return m;
  }
  Mag pow_ui(unsigned long e) const {
    Mag m;
    mpfr_pow_ui(m.v_.get(), v_.get(), e, MPFR_RNDU);
    return m;
  }
  // this / o with o given as a lower bound, rounded up.
  Mag div_lower(const Mag& lower) const {
    Mag m;
    mpfr_div(m.v_.get(), v_.get(), lower.v_.get(), MPFR_RNDU);
    return m;
  }

  bool operator<(const Mag& o) const { return mpfr_less_p(v_.get(), o.v_.get()) != 0; }
  bool operator<=(const Mag& o) const { return mpfr_lessequal_p(v_.get(), o.v_.get()) != 0; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_finite() const { return mpfr_number_p(v_.get()) != 0; }
  double to_double() const { return mpfr_get_d(v_.get(), MPFR_RNDU); }
  // log2 of the magnitude, -inf for zero.
  double log2() const;
  mpfr_srcptr get() const { return v_.get(); }
  mpfr_ptr get() { return v_.get(); }

 private:
  Real v_;
};

// Plain complex number with MPFR parts (no error tracking).
struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  static Complex from_si(long x, mpfr_prec_t prec) {
    return Complex(Real::from_si(x, prec), Real(prec));
  }
  mpfr_prec_t prec() const { return re.prec(); }
  void set_prec(mpfr_prec_t p);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex mul_mpz(const Complex& a, const mpz_class& k);
// |a|, rounded to nearest at the precision of a.
Real abs(const Complex& a);
double abs_d(const Complex& a);
double log2_abs(const Complex& a);
std::string to_string(const Complex& a, int digits = 30);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_REAL_HPP
