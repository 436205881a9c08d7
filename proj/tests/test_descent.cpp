#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "speciallocus/arith.hpp"
#include "speciallocus/descent.hpp"
#include "speciallocus/errors.hpp"
#include "speciallocus/quadforms.hpp"

using namespace speciallocus;

namespace {

// Number of reduced forms (a, b, c) with b^2 - 4ac = D, gcd = 1, by direct scan.
std::uint64_t brute_h(long D) {
  std::uint64_t h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

// l splits in the order of discriminant D iff D is a nonzero square mod 4l
// (for odd l: mod l; for l = 2: D = 1 mod 8).
bool brute_split(std::uint64_t l, long D) {
  if (l == 2) return ((D % 8) + 8) % 8 == 1;
  long r = ((D % long(l)) + long(l)) % long(l);
  if (r == 0) return false;
  for (std::uint64_t x = 1; x < l; ++x)
    if ((x * x) % l == static_cast<std::uint64_t>(r)) return true;
  return false;
}

}  // namespace

TEST(Chebotarev, Threshold) {
  EXPECT_THROW(chebotarev_threshold(2, mpz_class(15)), DomainError);
  EXPECT_THROW(chebotarev_threshold(0, mpz_class(100)), DomainError);
  auto t = chebotarev_threshold(2, mpz_class(1000000));
  double L = std::log(1e6), LL = std::log(L);
  EXPECT_NEAR(t.x_min, 2 * L * L * LL * LL, 1e-9);
  EXPECT_NEAR(t.x_min, 2632.0, 0.05);
  double prev = 0;
  for (double x = 3000; x < 1e6; x *= 1.7) {
    double c = t.count_at(x);
    EXPECT_GT(c, prev);
    prev = c;
  }
  EXPECT_THROW(t.count_at(100), DomainError);
  auto big = chebotarev_threshold(4, mpz_class("1000000000000000000000000000000"));
  EXPECT_NEAR(big.log_d, 30 * std::log(10.0), 1e-9);
}

TEST(Chebotarev, CompositeDiscBounds) {
  auto a = composite_disc_bounds({mpz_class(7)});
  EXPECT_EQ(a.lower, 7);
  EXPECT_EQ(a.upper, 7);
  auto b = composite_disc_bounds({mpz_class(3), mpz_class(4)});
  EXPECT_EQ(b.lower, 4);
  EXPECT_EQ(b.upper, 144);
  auto c = composite_disc_bounds({mpz_class(3), mpz_class(4), mpz_class(7)});
  EXPECT_EQ(c.lower, 7);
  EXPECT_EQ(c.upper, 49787136);
  EXPECT_THROW(composite_disc_bounds({}), ValidationError);
  EXPECT_THROW(composite_disc_bounds({mpz_class(2)}), ValidationError);
}

TEST(SplitPrime, Examples) {
  EXPECT_EQ(split_prime_search({mpz_class(-4)}, 3).l, 5u);
  EXPECT_EQ(split_prime_search({mpz_class(-3), mpz_class(-4)}, 0).l, 13u);
  EXPECT_EQ(split_prime_search({mpz_class(-4)}, 2).l, 5u);
  EXPECT_THROW(split_prime_search({mpz_class(-4)}, 5, 12), NotFoundError);
  EXPECT_THROW(split_prime_search({}, 0), ValidationError);
}

TEST(SplitPrime, AgreesWithBruteForce) {
  std::vector<long> Ds{-3, -4, -7, -8, -11, -15, -20, -23, -24, -39, -47, -56, -84, -163, -399};
  for (std::size_t i = 0; i < Ds.size(); ++i)
    for (std::size_t j = i; j < Ds.size(); ++j) {
      auto r = split_prime_search({mpz_class(Ds[i]), mpz_class(Ds[j])}, 0);
      for (std::uint64_t l = 2; l < r.l; ++l)
        if (is_prime(l)) EXPECT_FALSE(brute_split(l, Ds[i]) && brute_split(l, Ds[j]));
      EXPECT_TRUE(brute_split(r.l, Ds[i]) && brute_split(r.l, Ds[j]));
      EXPECT_TRUE(is_split(r.l, mpz_class(Ds[i])) && is_split(r.l, mpz_class(Ds[j])));
    }
}

TEST(Lemma71, Examples) {
  auto r = lemma71_feasible(1, 1, mpz_class(-4), mpz_class(-4), 1000);
  EXPECT_FALSE(r.l);
  EXPECT_EQ(r.binding, 3);
  EXPECT_EQ(r.h1, 1u);
  auto s = lemma71_feasible(7, 2, mpz_class(-4), mpz_class(-4), 7);
  EXPECT_FALSE(s.l);
  EXPECT_EQ(s.binding, 1);
  // 3 is inert in Z[i] and 7 too; cap 7 leaves l = 5 for d <= 4 only
  auto t = lemma71_feasible(5, 1, mpz_class(-4), mpz_class(-4), 11);
  EXPECT_FALSE(t.l);
  EXPECT_EQ(t.binding, 2);
}

TEST(Lemma71, ScanFindsCertifiedPair) {
  auto hit = lemma71_scan(1, 1, 1000000);
  EXPECT_TRUE(lemma71_verify(1, 1, hit.D, hit.D, hit.l));
  long D = hit.D.get_si();
  EXPECT_EQ(hit.h, brute_h(D));
  EXPECT_LT(2 * (hit.l + 1) * (hit.l + 1), hit.h);
  EXPECT_TRUE(brute_split(hit.l, D));
  EXPECT_GT(hit.l, 3u);
  // nothing smaller qualifies
  for (long a = 3; a < -D; ++a) {
    if (!is_fundamental(mpz_class(-a))) continue;
    std::uint64_t h = brute_h(-a);
    if (h <= 72) continue;
    for (std::uint64_t l = 5; 2 * (l + 1) * (l + 1) < h; l = next_prime(l)) EXPECT_FALSE(brute_split(l, -a)) << a;
  }
}

TEST(Descent, CurveInPlane) {
  auto below = descent_simulate(2, 1, mpz_class(1), mpz_class(373248));
  EXPECT_FALSE(below.inclusion_forced());
  ASSERT_EQ(below.steps.size(), 1u);
  EXPECT_EQ(below.steps[0].l, 5);
  EXPECT_EQ(below.steps[0].B, 72);
  EXPECT_EQ(below.minimal_sufficient_mx, 373249);
  auto at = descent_simulate(2, 1, mpz_class(1), mpz_class(373249));
  ASSERT_TRUE(at.inclusion_forced());
  EXPECT_EQ(*at.forced_at, 0u);
  EXPECT_THROW(descent_simulate(2, 2, mpz_class(1), mpz_class(100)), DomainError);
  EXPECT_THROW(descent_simulate(3, 1, mpz_class(1), mpz_class(10)), DomainError);
}

TEST(Descent, LedgerRecurrence) {
  auto led = descent_simulate(4, 3, mpz_class(2), mpz_class(1000));
  ASSERT_EQ(led.steps.size(), 3u);
  mpz_class A = 2;
  for (unsigned i = 0; i < 3; ++i) {
    const auto& s = led.steps[i];
    EXPECT_EQ(s.dim, 3 - i);
    EXPECT_EQ(s.A, A);
    mpz_class l = std::max(mpz_class(5), mpz_class(A + 1));
    EXPECT_EQ(s.l, l);
    mpz_class c = pow_ui(l + 1, 4) * factorial(s.dim) * binomial(4, 4 - s.dim) * A;
    EXPECT_EQ(s.c, c);
    EXPECT_EQ(s.B, 2 * A * A * (l + 1) * (l + 1));
    EXPECT_EQ(s.orbit, 10);
    if (i) EXPECT_GE(s.A, led.steps[i - 1].A);
    A = 4 * c * A;
  }
}

TEST(Descent, MinimalSufficientRoundTrip) {
  for (auto [n, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {3, 2}, {4, 3}, {5, 2}})
    for (long A0 = 1; A0 <= 5; ++A0) {
      auto led = descent_simulate(n, d, mpz_class(A0), mpz_class(16));
      mpz_class m = led.minimal_sufficient_mx;
      auto again = descent_simulate(n, d, mpz_class(A0), m);
      ASSERT_TRUE(again.inclusion_forced());
      EXPECT_LE(*again.forced_at, d - 1);
      if (m > 16) EXPECT_FALSE(descent_simulate(n, d, mpz_class(A0), m - 1).inclusion_forced());
      // exact threshold: the largest intersection bound, cubed
      mpz_class B = 0;
      for (const auto& s : led.steps) B = std::max(B, s.B);
      EXPECT_EQ(m, std::max(mpz_class(16), mpz_class(B * B * B + 1)));
    }
}

TEST(Descent, MonotoneInMx) {
  std::optional<unsigned> prev;
  bool seen = false;
  for (mpz_class m = 16; m < mpz_class("1000000000000000000000000000000000000000000000000000000000000"); m *= 37) {
    auto led = descent_simulate(3, 2, mpz_class(3), m);
    if (seen) {
      ASSERT_TRUE(led.inclusion_forced());
      EXPECT_LE(*led.forced_at, *prev);
    }
    if (led.inclusion_forced()) {
      seen = true;
      prev = led.forced_at;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Descent, ClosedFormBound) {
  for (auto [n, d] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {4, 3}, {2, 1}})
    for (long A0 = 1; A0 <= 5; ++A0)
      for (const char* m : {"16", "1000000", "100000000000000000000"}) {
        auto led = descent_simulate(n, d, mpz_class(A0), mpz_class(m));
        for (const auto& s : led.steps) EXPECT_LE(s.A, descent_closed_form_bound(n, d, mpz_class(A0), mpz_class(m), s.i));
      }
}

TEST(Descent, PrimeBudget) {
  DescentOptions o;
  o.prime_budget = 101;
  auto led = descent_simulate(2, 1, mpz_class(1), mpz_class(16), o);
  EXPECT_EQ(led.steps[0].l, 101);
  EXPECT_EQ(led.steps[0].B, 2 * 102 * 102);
}
