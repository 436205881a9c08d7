#ifndef SPECIALLOCUS_DESCENT_HPP
#define SPECIALLOCUS_DESCENT_HPP

// Effective Chebotarev thresholds, common split primes, the split-prime /
// class-number feasibility test and the degree-growth ledger of the descent.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace speciallocus {

struct ChebotarevThreshold {
  unsigned long n_M;
  double log_d;   // log d_M
  double x_min;   // 2 (log d)^2 (log log d)^2
  // x / (3 n_M log x); DomainError unless x > max(x_min, e^2).
  double count_at(double x) const;
};

// DomainError when d_M < 16 or n_M < 1.
ChebotarevThreshold chebotarev_threshold(unsigned long n_M, const mpz_class& d_M);

struct DiscBounds {
  mpz_class lower, upper;
};
// lower = max d_i, upper = (prod d_i)^(2^(n-1)).
DiscBounds composite_disc_bounds(const std::vector<mpz_class>& d_list);

struct SplitPrimeResult {
  std::uint64_t l;
  double log_bound;   // (log max|D|)^3
  bool within_bound;  // l < (log max|D|)^3
};
// Least prime l > l_min split in every order; NotFoundError past cap.
SplitPrimeResult split_prime_search(const std::vector<mpz_class>& discs, std::uint64_t l_min,
                                    std::uint64_t cap = 1000000);

struct Lemma71Result {
  std::optional<std::uint64_t> l;
  std::uint64_t h1 = 0, h2 = 0;
  // When l is empty: the condition (1, 2 or 3) that failed for every candidate.
  int binding = 0;
  std::string describe() const;
};

// Least prime l <= l_cap with l > max(3, d1, d2), l split in both orders and
// 2 d1 d2 (l+1)^2 < max(h(D1), h(D2)).
Lemma71Result lemma71_feasible(std::uint64_t d1, std::uint64_t d2, const mpz_class& D1, const mpz_class& D2,
                               std::uint64_t l_cap);
// Re-checks all three conditions for a returned prime.
bool lemma71_verify(std::uint64_t d1, std::uint64_t d2, const mpz_class& D1, const mpz_class& D2, std::uint64_t l);

struct Lemma71Hit {
  mpz_class D;
  std::uint64_t l;
  std::uint64_t h;
};
// First fundamental D (by increasing |D| <= max_abs) with D1 = D2 = D
// feasible for (d1, d2); NotFoundError when none.
Lemma71Hit lemma71_scan(std::uint64_t d1, std::uint64_t d2, std::uint64_t max_abs, std::uint64_t l_cap = 1000);

struct DescentStep {
  unsigned i;
  unsigned dim;       // d_i = d - i
  mpz_class A;        // degree bound A_i
  mpz_class l;        // prime budget l_i
  mpz_class c;        // hypersurface constant c_i
  mpz_class B;        // intersection bound 2 A_i^2 (l_i+1)^2
  mpz_class orbit;    // floor(m_x^(1/3))
};

struct DescentLedger {
  unsigned n, d;
  mpz_class A0, m_x;
  std::vector<DescentStep> steps;
  std::optional<unsigned> forced_at;  // inclusion forced at this step
  mpz_class minimal_sufficient_mx;
  bool inclusion_forced() const { return forced_at.has_value(); }
};

struct DescentOptions {
  // Lower bound for every l_i (the prime budget); 0 means the default max(5, A_i+1).
  mpz_class prime_budget = 0;
};

DescentLedger descent_simulate(unsigned n, unsigned d, const mpz_class& A0, const mpz_class& m_x,
                               const DescentOptions& opt = {});

// (K' max(A0+6, ceil(log m_x)))^((3n)^i) with K' = n d! C(n, n/2) + 6.
mpz_class descent_closed_form_bound(unsigned n, unsigned d, const mpz_class& A0, const mpz_class& m_x, unsigned i);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_DESCENT_HPP
