#include "speciallocus/descent.hpp"

#include <algorithm>
#include <cmath>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"
#include "speciallocus/quadforms.hpp"

namespace speciallocus {

namespace {

double log_mpz(const mpz_class& x) {
  long e;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

std::uint64_t class_number_of(const mpz_class& D) {
  if (mpz_fits_slong_p(D.get_mpz_t())) return class_number(D.get_si());
  return reduced_forms(D).size();
}

}  // namespace

double ChebotarevThreshold::count_at(double x) const {
  if (!(x > std::max(x_min, std::exp(2.0))))
    throw DomainError("count_at(x) is only defined for x > max(x_min, e^2)");
  return x / (3.0 * static_cast<double>(n_M) * std::log(x));
}

ChebotarevThreshold chebotarev_threshold(unsigned long n_M, const mpz_class& d_M) {
  if (n_M < 1) throw DomainError("field degree must be >= 1");
  if (d_M < 16) throw DomainError("d_M = " + d_M.get_str() + " < 16: log log d_M is not usable");
  ChebotarevThreshold t;
  t.n_M = n_M;
  t.log_d = log_mpz(d_M);
  double ll = std::log(t.log_d);
  t.x_min = 2 * t.log_d * t.log_d * ll * ll;
  return t;
}

DiscBounds composite_disc_bounds(const std::vector<mpz_class>& d_list) {
  if (d_list.empty()) throw ValidationError("composite_disc_bounds needs at least one discriminant");
  if (d_list.size() > 24) throw ResourceError("more than 24 fields: the upper bound is too large to write down");
  DiscBounds b;
  b.lower = 0;
  mpz_class prod = 1;
  for (const auto& d : d_list) {
    if (d < 3) throw ValidationError("discriminant magnitudes must be >= 3, got " + d.get_str());
    b.lower = std::max(b.lower, d);
    prod *= d;
  }
  b.upper = pow_ui(prod, 1UL << (d_list.size() - 1));
  return b;
}

SplitPrimeResult split_prime_search(const std::vector<mpz_class>& discs, std::uint64_t l_min, std::uint64_t cap) {
  if (discs.empty()) throw ValidationError("split_prime_search needs at least one discriminant");
  mpz_class mx = 0;
  for (const auto& D : discs) {
    require_discriminant(D);
    mx = std::max(mx, mpz_class(abs(D)));
  }
  double lb = std::pow(log_mpz(mx), 3);
  for (std::uint64_t l = next_prime(l_min); l <= cap; l = next_prime(l)) {
    bool all = true;
    for (const auto& D : discs)
      if (!is_split(l, D)) {
        all = false;
        break;
      }
    if (all) return {l, lb, static_cast<double>(l) < lb};
  }
  throw NotFoundError("no common split prime up to the search cap " + std::to_string(cap));
}

std::string Lemma71Result::describe() const {
  if (l) return "l = " + std::to_string(*l);
  switch (binding) {
    case 1:
      return "no prime l <= cap with l > max(3, d1, d2)";
    case 2:
      return "no admissible l splits in both orders";
    case 3:
      return "2 d1 d2 (l+1)^2 >= max(h1, h2) for every admissible split l";
  }
  return "no candidate";
}

bool lemma71_verify(std::uint64_t d1, std::uint64_t d2, const mpz_class& D1, const mpz_class& D2, std::uint64_t l) {
  if (!is_prime(l)) return false;
  if (l <= std::max<std::uint64_t>({3, d1, d2})) return false;
  if (!is_split(l, D1) || !is_split(l, D2)) return false;
  mpz_class lhs = mpz_class(2) * d1 * d2 * (l + 1) * (l + 1);
  mpz_class h = std::max(class_number_of(D1), class_number_of(D2));
  return lhs < h;
}

Lemma71Result lemma71_feasible(std::uint64_t d1, std::uint64_t d2, const mpz_class& D1, const mpz_class& D2,
                               std::uint64_t l_cap) {
  if (d1 < 1 || d2 < 1) throw ValidationError("degrees must be >= 1");
  require_discriminant(D1);
  require_discriminant(D2);
  Lemma71Result r;
  r.h1 = class_number_of(D1);
  r.h2 = class_number_of(D2);
  mpz_class h = std::max(r.h1, r.h2);
  bool pass1 = false, pass2 = false;
  for (std::uint64_t l = 2; l <= l_cap; l = next_prime(l)) {
    if (l <= std::max<std::uint64_t>({3, d1, d2})) continue;
    pass1 = true;
    if (!is_split(l, D1) || !is_split(l, D2)) continue;
    pass2 = true;
    mpz_class lhs = mpz_class(2) * d1 * d2 * (l + 1) * (l + 1);
    if (lhs < h) {
      r.l = l;
      return r;
    }
    break;  // the left side only grows with l
  }
  r.binding = !pass1 ? 1 : !pass2 ? 2 : 3;
  return r;
}

Lemma71Hit lemma71_scan(std::uint64_t d1, std::uint64_t d2, std::uint64_t max_abs, std::uint64_t l_cap) {
  std::uint64_t l0 = next_prime(std::max<std::uint64_t>({3, d1, d2}));
  mpz_class need = mpz_class(2) * d1 * d2 * (l0 + 1) * (l0 + 1);
  for (std::uint64_t a = 3; a <= max_abs; ++a) {
    mpz_class D = -mpz_class(a);
    if (!is_fundamental(D)) continue;
    std::uint64_t h = class_number(-static_cast<std::int64_t>(a));
    if (mpz_class(h) <= need) continue;
    auto r = lemma71_feasible(d1, d2, D, D, l_cap);
    if (r.l) return {D, *r.l, h};
  }
  throw NotFoundError("no fundamental discriminant with |D| <= " + std::to_string(max_abs) + " is feasible");
}

namespace {

void validate_descent(unsigned n, unsigned d, const mpz_class& A0, const mpz_class& m_x) {
  if (d < 1) throw DomainError("start dimension must be >= 1");
  if (d >= n) throw DomainError("start dimension " + std::to_string(d) + " must be below n = " + std::to_string(n));
  if (A0 < 1) throw DomainError("A0 must be >= 1");
  if (m_x < 16) throw DomainError("m_x must be >= 16");
}

std::vector<DescentStep> descent_steps(unsigned n, unsigned d, const mpz_class& A0, const DescentOptions& opt) {
  std::vector<DescentStep> steps;
  mpz_class A = A0;
  for (unsigned i = 0; i < d; ++i) {
    DescentStep s;
    s.i = i;
    s.dim = d - i;
    s.A = A;
    s.l = std::max({mpz_class(5), mpz_class(A + 1), opt.prime_budget});
    mpz_class l1 = s.l + 1;
    mpz_class l1n;
    mpz_pow_ui(l1n.get_mpz_t(), l1.get_mpz_t(), n);
    s.c = l1n * factorial(s.dim) * binomial(n, n - s.dim) * A;
    s.B = 2 * A * A * l1 * l1;
    steps.push_back(s);
    A = n * s.c * A;
  }
  return steps;
}

// First step i with m^(1/3) above every intersection bound of steps >= i.
std::optional<unsigned> forced_step(const std::vector<DescentStep>& steps, const mpz_class& m) {
  std::vector<mpz_class> suffix(steps.size() + 1, 0);
  for (std::size_t k = steps.size(); k-- > 0;) suffix[k] = std::max(suffix[k + 1], steps[k].B);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    mpz_class b3 = suffix[i] * suffix[i] * suffix[i];
    if (m > b3) return static_cast<unsigned>(i);
  }
  return std::nullopt;
}

}  // namespace

DescentLedger descent_simulate(unsigned n, unsigned d, const mpz_class& A0, const mpz_class& m_x,
                               const DescentOptions& opt) {
  validate_descent(n, d, A0, m_x);
  DescentLedger led;
  led.n = n;
  led.d = d;
  led.A0 = A0;
  led.m_x = m_x;
  led.steps = descent_steps(n, d, A0, opt);
  mpz_class cube;
  mpz_root(cube.get_mpz_t(), m_x.get_mpz_t(), 3);
  for (auto& s : led.steps) s.orbit = cube;
  led.forced_at = forced_step(led.steps, m_x);
  // doubling, then bisection on the monotone predicate
  mpz_class hi = 16;
  while (!forced_step(led.steps, hi)) hi *= 2;
  mpz_class lo = hi / 2;  // not forced (or below 16)
  if (hi == 16) lo = 15;
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (mid >= 16 && forced_step(led.steps, mid)) hi = mid;
    else lo = mid;
  }
  led.minimal_sufficient_mx = hi;
  return led;
}

mpz_class descent_closed_form_bound(unsigned n, unsigned d, const mpz_class& A0, const mpz_class& m_x, unsigned i) {
  validate_descent(n, d, A0, m_x);
  mpz_class K = n * factorial(d) * binomial(n, n / 2) + 6;
  mpz_class lg = static_cast<long>(std::ceil(log_mpz(m_x)));
  mpz_class base = K * std::max(mpz_class(A0 + 6), lg);
  mpz_class e = pow_ui(mpz_class(3 * n), i);
  double bits = e.get_d() * static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
  if (bits > double(1 << 26)) throw ResourceError("closed-form bound exceeds 2^26 bits");
  return pow_ui(base, e.get_ui());
}

}  // namespace speciallocus
