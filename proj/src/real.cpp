#include "speciallocus/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "speciallocus/errors.hpp"

namespace speciallocus {

Real Real::from_string(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return std::numeric_limits<long>::min() / 2;
  return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

double Mag::log2() const {
  if (v_.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_.get(), MPFR_RNDU);
  return std::log2(m) + static_cast<double>(e);
}

void Complex::set_prec(mpfr_prec_t p) {
  Real r(p), i(p);
  mpfr_set(r.get(), re.get(), MPFR_RNDN);
  mpfr_set(i.get(), im.get(), MPFR_RNDN);
  re = std::move(r);
  im = std::move(i);
}

namespace {
mpfr_prec_t pmax(const Complex& a, const Complex& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Complex operator+(const Complex& a, const Complex& b) {
  Complex r(pmax(a, b));
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

Complex operator-(const Complex& a, const Complex& b) {
  Complex r(pmax(a, b));
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

Complex operator*(const Complex& a, const Complex& b) {
  Complex r(pmax(a, b));
  mpfr_fmms(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(r.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  mpfr_prec_t p = pmax(a, b);
  Real n2(p + 8);
  mpfr_fmma(n2.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  if (n2.is_zero()) throw DomainError("complex division by zero");
  Complex r(p + 8);
  mpfr_fmma(r.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(r.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  Complex out(p);
  mpfr_div(out.re.get(), r.re.get(), n2.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), r.im.get(), n2.get(), MPFR_RNDN);
  return out;
}

Complex operator-(const Complex& a) {
  Complex r(a.prec());
  mpfr_neg(r.re.get(), a.re.get(), MPFR_RNDN);
  mpfr_neg(r.im.get(), a.im.get(), MPFR_RNDN);
  return r;
}

Complex mul_mpz(const Complex& a, const mpz_class& k) {
  Complex r(a.prec());
  mpfr_mul_z(r.re.get(), a.re.get(), k.get_mpz_t(), MPFR_RNDN);
  mpfr_mul_z(r.im.get(), a.im.get(), k.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real abs(const Complex& a) {
  Real r(a.prec());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

double abs_d(const Complex& a) { return abs(a).to_double(); }

double log2_abs(const Complex& a) {
  Real r = abs(a);
  if (r.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, r.get(), MPFR_RNDN);
  return std::log2(m) + static_cast<double>(e);
}

std::string to_string(const Complex& a, int digits) {
  std::string s = a.re.to_string(digits);
  if (!a.im.is_zero()) {
    std::string i = a.im.to_string(digits);
    s += (i[0] == '-' ? "" : "+") + i + "i";
  }
  return s;
}

}  // namespace speciallocus
