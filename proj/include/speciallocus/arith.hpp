#ifndef SPECIALLOCUS_ARITH_HPP
#define SPECIALLOCUS_ARITH_HPP

// Elementary integer arithmetic shared by every module.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace speciallocus {

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

bool is_prime(std::uint64_t n);
bool is_prime(const mpz_class& n);

// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

// All primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Trial division; n >= 1.
Factorization factorize(std::uint64_t n);

// |P^1(Z/nZ)| = n * prod_{p | n} (1 + 1/p).
std::uint64_t psi(std::uint64_t n);
// Euler's totient.
std::uint64_t euler_phi(std::uint64_t n);
// Number of distinct prime divisors.
unsigned distinct_prime_count(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Kronecker symbol (a | n) for arbitrary integers.
int kronecker(const mpz_class& a, const mpz_class& n);

// p-adic valuation; v_p(0) is reported as a large sentinel.
unsigned valuation(const mpz_class& n, std::uint64_t p);

mpz_class factorial(unsigned n);
mpz_class binomial(unsigned n, unsigned k);
mpz_class pow_ui(const mpz_class& base, unsigned long exp);

// Arithmetic modulo a word-sized prime.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
std::uint64_t mpz_mod_u64(const mpz_class& a, std::uint64_t p);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_ARITH_HPP
