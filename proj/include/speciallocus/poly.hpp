#ifndef SPECIALLOCUS_POLY_HPP
#define SPECIALLOCUS_POLY_HPP

// Dense integer polynomials in one and two variables, and the word-sized
// modular arithmetic used for multi-modular resultants.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace speciallocus {

// Coefficients in ascending degree; the zero polynomial is empty.
using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& f);
long degree(const ZPoly& f);  // -1 for zero
ZPoly add(const ZPoly& f, const ZPoly& g);
ZPoly sub(const ZPoly& f, const ZPoly& g);
ZPoly mul(const ZPoly& f, const ZPoly& g);
ZPoly scale(const ZPoly& f, const mpz_class& c);
ZPoly derivative(const ZPoly& f);
mpz_class content(const ZPoly& f);
ZPoly primitive_part(const ZPoly& f);
// Division by a polynomial with leading coefficient +-1.
std::pair<ZPoly, ZPoly> divrem_unit(const ZPoly& f, const ZPoly& g);
// gcd in Z[x], normalized with positive leading coefficient.
ZPoly gcd(const ZPoly& f, const ZPoly& g);
std::string to_string(const ZPoly& f, char var = 'x');

// c[i][j] is the coefficient of x^i y^j.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(std::size_t dx, std::size_t dy) : c_(dx + 1, std::vector<mpz_class>(dy + 1)) {}

  const mpz_class& coeff(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const mpz_class& v);
  void add_to(std::size_t i, std::size_t j, const mpz_class& v);

  long deg_x() const;
  long deg_y() const;
  bool is_zero() const { return deg_x() < 0; }
  BiPoly transpose() const;
  BiPoly operator-() const;
  bool operator==(const BiPoly& o) const;
  bool operator!=(const BiPoly& o) const { return !(*this == o); }
  mpz_class content() const;
  // As a polynomial in y with coefficients in Z[x]: entry j is the Z[x]
  // coefficient of y^j.
  std::vector<ZPoly> coeffs_in_y() const;
  std::vector<ZPoly> coeffs_in_x() const;
  ZPoly diagonal() const;  // F(x, x)
  std::size_t terms() const;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<std::vector<mpz_class>> c_;
};

namespace modp {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f);
Poly reduce(const ZPoly& f, std::uint64_t p);
std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p);
std::uint64_t resultant(Poly a, Poly b, std::uint64_t p);
// Polynomial of degree < n through (xs[i], ys[i]); xs distinct.
Poly interpolate(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys, std::uint64_t p);

}  // namespace modp

// Primes just above 2^62, generated on demand.
std::uint64_t crt_prime(std::size_t k);

// Incremental CRT with symmetric lift.
class CrtAccumulator {
 public:
  explicit CrtAccumulator(std::size_t len) : v_(len, 0), mod_(1) {}
  void add(const modp::Poly& residues, std::uint64_t p);
  const mpz_class& modulus() const { return mod_; }
  ZPoly result() const;  // symmetric residues in (-M/2, M/2]

 private:
  std::vector<mpz_class> v_;
  mpz_class mod_;
};

}  // namespace speciallocus

#endif  // SPECIALLOCUS_POLY_HPP
