#include <gtest/gtest.h>

#include <random>
#include <set>

#include "speciallocus/errors.hpp"
#include "speciallocus/quadforms.hpp"
#include "support/class_number_oracle.hpp"

using namespace speciallocus;

namespace {

// Brute-force search for a reduced form equivalent to q: apply all
// unimodular substitutions with entries in [-R, R].
QuadraticForm brute_reduce(const QuadraticForm& q, int R) {
  QuadraticForm best{0, 0, 0};
  for (int p = -R; p <= R; ++p)
    for (int r = -R; r <= R; ++r)
      for (int s = -R; s <= R; ++s)
        for (int t = -R; t <= R; ++t) {
          if (p * t - r * s != 1) continue;
          // q(px + ry, sx + ty)
          mpz_class a = q.a * p * p + q.b * p * s + q.c * s * s;
          mpz_class b = 2 * q.a * p * r + q.b * (p * t + r * s) + 2 * q.c * s * t;
          mpz_class c = q.a * r * r + q.b * r * t + q.c * t * t;
          QuadraticForm f{a, b, c};
          if (is_reduced(f)) return f;
        }
  return best;
}

std::uint64_t oracle_h(long D) { return oracle::class_number(D); }

QuadraticForm transform(const QuadraticForm& q, long p, long r, long s, long t) {
  return {q.a * p * p + q.b * p * s + q.c * s * s, 2 * q.a * p * r + q.b * (p * t + r * s) + 2 * q.c * s * t,
          q.a * r * r + q.b * r * t + q.c * t * t};
}

}  // namespace

TEST(Quadforms, ReduceExamples) {
  EXPECT_EQ(reduce_form({1, 1, 6}), (QuadraticForm{1, 1, 6}));
  EXPECT_EQ(reduce_form({1, 0, 5}), (QuadraticForm{1, 0, 5}));
  QuadraticForm r = reduce_form({3, 7, 5});
  EXPECT_EQ(r, (QuadraticForm{1, 1, 3}));
  EXPECT_EQ(r, brute_reduce({3, 7, 5}, 3));
  EXPECT_EQ(r.disc(), -11);
  EXPECT_THROW(reduce_form({1, 3, 1}), ValidationError);
  EXPECT_THROW(reduce_form({-1, 0, -1}), ValidationError);
}

TEST(Quadforms, ReductionRespectsEquivalence) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> U(-4, 4);
  for (long D : {-23L, -47L, -56L, -71L, -84L, -96L, -143L}) {
    auto forms = reduced_forms(D);
    for (const auto& f : forms) {
      EXPECT_EQ(reduce_form(f), f);
      for (int k = 0; k < 40; ++k) {
        long p = U(rng), r = U(rng), s = U(rng), t = U(rng);
        if (p * t - r * s != 1) continue;
        QuadraticForm g = transform(f, p, r, s, t);
        EXPECT_EQ(g.disc(), D);
        EXPECT_EQ(reduce_form(g), f);
        EXPECT_EQ(reduce_form(reduce_form(g)), reduce_form(g));
      }
    }
    // distinct reduced forms stay distinct
    std::set<QuadraticForm> s(forms.begin(), forms.end());
    EXPECT_EQ(s.size(), forms.size());
  }
}

TEST(Quadforms, ClassGroupExamples) {
  auto g4 = class_group(-4);
  ASSERT_EQ(g4.size(), 1u);
  EXPECT_EQ(g4.classes()[0], (QuadraticForm{1, 0, 1}));
  auto g23 = class_group(-23);
  ASSERT_EQ(g23.size(), 3u);
  std::set<QuadraticForm> expect{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}};
  EXPECT_EQ(std::set<QuadraticForm>(g23.classes().begin(), g23.classes().end()), expect);
  EXPECT_EQ(g23.structure(), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(class_group(-12).size(), 1u);
  EXPECT_TRUE(class_group(-12).structure().empty());
  EXPECT_EQ(class_group(-47).size(), 5u);
  EXPECT_THROW(class_group(5), ValidationError);
  EXPECT_THROW(class_group(-5), ValidationError);
  EXPECT_THROW(class_group(0), ValidationError);
}

TEST(Quadforms, GroupLaws) {
  for (long D : {-23L, -56L, -84L, -260L, -420L, -3299L}) {
    auto G = class_group(D);
    auto e = G.identity();
    EXPECT_EQ(G.classes()[e], principal_form(D));
    for (std::size_t i = 0; i < G.size(); ++i) {
      EXPECT_EQ(G.mul(i, e), i);
      EXPECT_EQ(G.mul(i, G.inv(i)), e);
      for (std::size_t j = 0; j < G.size(); ++j) {
        EXPECT_EQ(G.mul(i, j), G.mul(j, i));
        if (G.size() <= 30)
          for (std::size_t k = 0; k < G.size(); ++k) EXPECT_EQ(G.mul(G.mul(i, j), k), G.mul(i, G.mul(j, k)));
      }
    }
  }
}

TEST(Quadforms, StructureKnownCases) {
  // -420: (Z/2)^3;  -84: (Z/2)^2;  -260: Z/2 x Z/4; -3299: Z/3 x Z/9 (3-rank 2)
  EXPECT_EQ(class_group(-420).structure(), (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(class_group(-84).structure(), (std::vector<std::uint64_t>{2, 2}));
  EXPECT_EQ(class_group(-260).structure(), (std::vector<std::uint64_t>{2, 4}));
  EXPECT_EQ(class_group(-3299).structure(), (std::vector<std::uint64_t>{3, 9}));
  EXPECT_EQ(class_group(-3299).size(), 27u);
}

TEST(Quadforms, ClassNumberAgreesWithOracle) {
  for (long D = -3; D >= -3000; --D) {
    if (((D % 4) + 4) % 4 > 1) continue;
    std::uint64_t h = oracle_h(D);
    EXPECT_EQ(class_number(D), h) << D;
    if (-D <= 600) EXPECT_EQ(class_group(D).size(), h) << D;
  }
}

TEST(Quadforms, ConductorDecompose) {
  EXPECT_EQ(conductor_decompose(-4), std::make_pair(mpz_class(-4), mpz_class(1)));
  EXPECT_EQ(conductor_decompose(-12), std::make_pair(mpz_class(-3), mpz_class(2)));
  EXPECT_EQ(conductor_decompose(-28), std::make_pair(mpz_class(-7), mpz_class(2)));
  EXPECT_EQ(conductor_decompose(-16), std::make_pair(mpz_class(-4), mpz_class(2)));
  EXPECT_EQ(conductor_decompose(-99), std::make_pair(mpz_class(-11), mpz_class(3)));
  EXPECT_EQ(conductor_decompose(-32), std::make_pair(mpz_class(-8), mpz_class(2)));
  EXPECT_TRUE(is_fundamental(-8));
  EXPECT_FALSE(is_fundamental(-36));
  EXPECT_THROW(conductor_decompose(-6), ValidationError);
}

TEST(Quadforms, SplitMatchesRootCount) {
  EXPECT_TRUE(is_split(5, -4));
  EXPECT_FALSE(is_split(3, -4));
  EXPECT_FALSE(is_split(2, -4));
  EXPECT_THROW(is_split(4, -4), DomainError);
  for (long l = 2; l < 100; ++l) {
    bool prime = true;
    for (long d = 2; d * d <= l; ++d) prime &= (l % d != 0);
    if (!prime) continue;
    for (long D = -3; D >= -1000; --D) {
      if (((D % 4) + 4) % 4 > 1) continue;
      int roots = 0;
      for (long x = 0; x < l; ++x) roots += (((x * x - D) % l) == 0);
      bool two_roots = roots == 2 && (D % l) != 0;
      if (l == 2) two_roots = (((D % 8) + 8) % 8) == 1;  // x^2 + x + (1-D)/4 splits mod 2
      EXPECT_EQ(is_split(l, D), two_roots) << l << " " << D;
    }
  }
}
