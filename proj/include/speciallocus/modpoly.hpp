#ifndef SPECIALLOCUS_MODPOLY_HPP
#define SPECIALLOCUS_MODPOLY_HPP

// Classical modular polynomials Phi_m, the Hecke correspondence T_m on the
// j-line and its products, the split-prime inclusion check, the plane-curve
// specialness test and a density probe for iterated Hecke orbits.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "speciallocus/cache.hpp"
#include "speciallocus/poly.hpp"
#include "speciallocus/real.hpp"

namespace speciallocus {

struct ModularPolynomial {
  unsigned m = 1;
  unsigned psi = 1;
  BiPoly poly;  // coefficient of x^psi is +1
};

struct ModPolyOptions {
  unsigned M_max = 20;
  const CacheDir* cache = nullptr;
};

// Throws ResourceError if m > M_max, PrecisionError if the construction
// fails its own invariant checks.
ModularPolynomial modular_poly(unsigned m, const ModPolyOptions& opt = {});

// Checks: monic of degree psi in x, degree psi in y, symmetry (m > 1),
// and for prime m the congruence Phi = (x^m - y)(x - y^m) mod m.
// Returns an empty string on success, else the violated invariant.
std::string check_modular_poly(const ModularPolynomial& phi);
bool kronecker_congruence(const BiPoly& f, unsigned l);

// Power series coefficients of j = 1/q + 744 + ... : entry k is the
// coefficient of q^(k-1).
std::vector<mpz_class> j_coefficients(std::size_t count);

// ---------------------------------------------------------------- roots

struct RootCluster {
  Complex value;
  unsigned multiplicity = 1;
};

// Roots of sum coeffs[k] y^k (leading coefficient nonzero).  Approximations
// are refined at a working precision above prec; clusters whose inclusion
// disks overlap within 2^(-prec/2) relative are merged with multiplicity.
std::vector<RootCluster> polynomial_roots(const std::vector<Complex>& coeffs, mpfr_prec_t prec);

struct HeckeImage {
  std::vector<Complex> source;
  unsigned m = 1;
  std::vector<std::vector<RootCluster>> per_coordinate;
  struct Target {
    std::vector<std::size_t> idx;  // cluster index per coordinate
    unsigned long multiplicity;
  };
  std::vector<Target> targets;

  unsigned long count() const;  // with multiplicity
  std::vector<Complex> point(const Target& t) const;
};

HeckeImage hecke_image(const std::vector<Complex>& x, unsigned m, mpfr_prec_t prec,
                       const ModPolyOptions& opt = {});

// ------------------------------------------------------------ inclusion

struct InclusionResult {
  bool holds = false;
  ZPoly resultant;  // Res_x(H_D(x), Phi_l(x, y)) in y
  ZPoly quotient;   // resultant / H_D(y) when holds
  std::size_t primes_used = 0;
};

// Resultant of a monic polynomial a(x) and f(x, y) with respect to x,
// reconstructed from images modulo word-sized primes.  bound_bits bounds
// log2 of the coefficient magnitudes.
ZPoly resultant_x(const ZPoly& a, const BiPoly& f, long bound_bits, std::size_t* primes_used = nullptr);

// Requires l split in O_D (else DomainError) and l <= M_max.
InclusionResult galois_hecke_inclusion(const mpz_class& D, unsigned l, const ModPolyOptions& opt = {});

// ------------------------------------------------------ special curves

struct SpecialVerdict {
  enum Kind { Special, NotSpecialWithinBound, Fiber } kind = NotSpecialWithinBound;
  unsigned m = 0;                    // Special
  char fixed_axis = 0;               // Fiber: 'x' or 'y' is constant
  std::optional<mpq_class> point;    // Fiber of degree one
  std::optional<mpz_class> cm_disc;  // Fiber matching a class polynomial
  std::string describe() const;
};

// F irreducible with content 1.  fiber_disc_bound > 0 compares fibers with
// class polynomials H_D for 3 <= |D| <= bound.
SpecialVerdict is_special_plane_curve(const BiPoly& F, const ModPolyOptions& opt = {},
                                      long fiber_disc_bound = 0);

// -------------------------------------------------------- density probe

struct DensityGrid {
  unsigned cols = 10, rows = 10;
  double re_min = -0.5, re_max = 0.5, im_min = 0.9, im_max = 1.9;
};

struct DensityStep {
  unsigned step;
  std::size_t points;     // distinct points seen so far
  std::size_t covered;    // covered cells so far
  double fraction;
  std::size_t outside;    // points of the fundamental domain outside the window
  std::size_t skipped;    // j-inversion failures
};

struct DensityReport {
  std::vector<DensityStep> steps;
  std::string csv() const;
};

// Inverts j on the fundamental domain: tau with j(tau) = w, or nullopt.
std::optional<Complex> invert_j(const Complex& w, mpfr_prec_t prec);

DensityReport orbit_density_probe(const Complex& j0, unsigned m, unsigned steps, const DensityGrid& grid = {},
                                  mpfr_prec_t prec = 128, const ModPolyOptions& opt = {});

}  // namespace speciallocus

#endif  // SPECIALLOCUS_MODPOLY_HPP
