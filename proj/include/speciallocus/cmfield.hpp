#ifndef SPECIALLOCUS_CMFIELD_HPP
#define SPECIALLOCUS_CMFIELD_HPP

// CM points on the j-line: certified evaluation of j, Hilbert class
// polynomials by rounding a certified product, and the class group action on
// the CM points of a given discriminant.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "speciallocus/ball.hpp"
#include "speciallocus/cache.hpp"
#include "speciallocus/quadforms.hpp"
#include "speciallocus/real.hpp"

namespace speciallocus {

struct CMPoint {
  ImaginaryQuadraticOrder order;
  QuadraticForm form;
  Complex tau;
  Complex j_value;
};

// (-b + i sqrt|D|) / (2a) as a ball.
CBall cm_tau_ball(const QuadraticForm& q, mpfr_prec_t prec);
Complex cm_tau(const QuadraticForm& q, mpfr_prec_t prec);

// j(tau) as a ball at working precision prec.  tau may be anywhere in the
// upper half plane; it is moved into the fundamental domain first.
CBall j_ball(const CBall& tau, mpfr_prec_t prec);

// j(tau) with absolute error below 2^(16 - precision); working precision is
// raised as needed.  precision < 64 or repeated failure -> PrecisionError.
Complex j_invariant(const Complex& tau, mpfr_prec_t precision);

// Representative of tau in the standard fundamental domain.
Complex to_fundamental_domain(const Complex& tau);

// j(tau) and dj/dtau, uncertified (for Newton iteration).
void j_and_derivative(const Complex& tau, mpfr_prec_t prec, Complex& j, Complex& dj);

struct ClassPolynomial {
  mpz_class D;
  std::vector<mpz_class> coeffs;  // coeffs[k] is the coefficient of x^k
  int attempts = 0;               // precision attempts used (1 = first)
  long bits = 0;                  // precision of the successful attempt

  std::size_t degree() const { return coeffs.size() - 1; }
};

struct HilbertOptions {
  double bits_scale = 1.0;  // multiplies the initial precision heuristic
  int max_retries = 4;
  const CacheDir* cache = nullptr;
};

long hilbert_initial_bits(const mpz_class& D);
ClassPolynomial hilbert_class_poly(const mpz_class& D, const HilbertOptions& opt = {});

struct GaloisOrbit {
  FormClassGroup group;
  std::vector<CMPoint> points;  // points[i] carries group.classes()[i]

  // Point reached from point p under the class c: its class is c^-1 * [p].
  std::size_t act(std::size_t c, std::size_t p) const { return group.mul(group.inv(c), p); }
};

GaloisOrbit galois_orbit(const mpz_class& D, mpfr_prec_t prec = 128);

// 2 log h(D) / log |D|; |D| >= 7.
Real brauer_siegel_ratio(const mpz_class& D, mpfr_prec_t prec = 128);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_CMFIELD_HPP
