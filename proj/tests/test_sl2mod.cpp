#include <gtest/gtest.h>

#include <random>
#include <set>

#include "speciallocus/errors.hpp"
#include "speciallocus/sl2mod.hpp"

using namespace speciallocus;

namespace {

// |SL2(Z/N)| by counting all quadruples with ad - bc = 1.
std::uint64_t brute_sl2(std::uint32_t N) {
  std::uint64_t n = 0;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b)
      for (std::uint32_t c = 0; c < N; ++c)
        for (std::uint32_t d = 0; d < N; ++d)
          if ((a * d + N * N - (b * c) % (N * N)) % N == 1 % N) ++n;
  return n;
}

std::size_t count(const std::vector<bool>& v) { return std::count(v.begin(), v.end(), true); }

}  // namespace

TEST(SL2Order, FormulaMatchesEnumeration) {
  EXPECT_EQ(group_order(2), 6u);
  EXPECT_EQ(group_order(5), 60u);
  EXPECT_EQ(group_order(25), 7500u);
  for (std::uint32_t N = 2; N <= 30; ++N) {
    std::uint64_t sl = brute_sl2(N);
    EXPECT_EQ(group_order(N), N > 2 ? sl / 2 : sl) << N;
    FiniteMatrixGroup G(N, 100000);
    EXPECT_EQ(G.size(), group_order(N)) << N;
  }
}

TEST(SL2Order, BudgetAndDomain) {
  EXPECT_THROW(FiniteMatrixGroup(25, 1000), ResourceError);
  EXPECT_THROW(group_order(1), DomainError);
  FiniteMatrixGroup G(7);
  EXPECT_THROW(G.canonical({1, 1, 1, 1}), DomainError);
}

TEST(SL2Group, ArithmeticAndCanonicalForm) {
  FiniteMatrixGroup G(7);
  EXPECT_EQ(G.index_of({6, 0, 0, 6}), G.identity());
  EXPECT_EQ(G.mul(G.S(), G.S()), G.identity());
  std::size_t st = G.mul(G.S(), G.T());
  EXPECT_EQ(G.mul(st, G.mul(st, st)), G.identity());  // (ST)^3 = +-1
  for (std::size_t g = 0; g < G.size(); g += 7) {
    EXPECT_EQ(G.mul(g, G.inv(g)), G.identity());
    EXPECT_EQ(G.right(1, g), G.mul(g, G.T()));
    EXPECT_EQ(G.right(2, G.right(1, g)), g);
  }
}

TEST(SL2MinIndex, KnownFacts) {
  auto r5 = min_proper_index(5, 10);
  ASSERT_TRUE(r5.index);
  EXPECT_EQ(*r5.index, 5u);
  EXPECT_EQ(r5.witness.order, 12u);

  auto r7 = min_proper_index(7, 10);
  ASSERT_TRUE(r7.index);
  EXPECT_EQ(*r7.index, 7u);

  auto r11 = min_proper_index(11, 12);
  ASSERT_TRUE(r11.index);
  EXPECT_EQ(*r11.index, 11u);
  EXPECT_EQ(r11.witness.order, 60u);
  FiniteMatrixGroup G(11);
  Subgroup H = generate(G, r11.witness.gens);
  EXPECT_EQ(H.order, 60u);
  EXPECT_FALSE(is_normal(G, H));  // simple A5 inside the simple group of order 660

  EXPECT_FALSE(min_proper_index(13, 13).index);
  auto r13 = min_proper_index(13, 14);
  ASSERT_TRUE(r13.index);
  EXPECT_EQ(*r13.index, 14u);
}

TEST(SL2MinIndex, NoSmallIndexAbove11) {
  for (std::uint32_t l : {13u, 17u, 19u}) EXPECT_FALSE(min_proper_index(l, l).index) << l;
}

TEST(SL2MinIndex, NodeBudget) {
  MinIndexOptions opt;
  opt.node_budget = 10;
  EXPECT_THROW(min_proper_index(13, 13, opt), ResourceError);
  EXPECT_THROW(min_proper_index(5, 1), DomainError);
}

TEST(SL2Normal, ReductionKernels) {
  auto n5 = normal_subgroups(5);
  ASSERT_EQ(n5.size(), 2u);
  EXPECT_EQ(n5[0].H.order, 1u);
  EXPECT_EQ(n5[1].H.order, 60u);

  auto n25 = normal_subgroups(25);
  ASSERT_EQ(n25.size(), 3u);
  EXPECT_EQ(n25[1].H.order, 125u);
  EXPECT_EQ(n25[1].level, 5u);
  FiniteMatrixGroup G(25);
  for (const auto& N : n25) EXPECT_TRUE(is_normal(G, N.H));

  auto n49 = normal_subgroups(49, 100000);
  ASSERT_EQ(n49.size(), 3u);
  EXPECT_EQ(n49[1].H.order, 343u);
  EXPECT_THROW(normal_subgroups(12), DomainError);
  EXPECT_THROW(normal_subgroups(49), ResourceError);
}

TEST(SL2Sym2, Irreducibility) {
  EXPECT_FALSE(sym2_irreducible(2));
  for (std::uint32_t l : {3u, 5u, 7u, 11u, 13u}) EXPECT_TRUE(sym2_irreducible(l)) << l;
  EXPECT_THROW(sym2_irreducible(9), DomainError);
}

TEST(SL2Torsion, LTorsionInKernel) {
  EXPECT_TRUE(ltorsion_in_kernel(5, 2));
  EXPECT_TRUE(ltorsion_in_kernel(7, 2));
}

TEST(SL2Goursat, FullAndDiagonal) {
  FiniteMatrixGroup G(5);
  auto full = goursat_decompose(G, G, {{G.S(), G.identity()}, {G.T(), G.identity()},
                                       {G.identity(), G.S()}, {G.identity(), G.T()}});
  EXPECT_EQ(full.quotient_order, 1u);
  EXPECT_EQ(full.H1.order, 60u);

  auto diag = goursat_decompose(G, G, {{G.S(), G.S()}, {G.T(), G.T()}});
  EXPECT_EQ(diag.H1.order, 1u);
  EXPECT_EQ(diag.H2.order, 1u);
  EXPECT_EQ(diag.quotient_order, 60u);
  for (auto [a, b] : diag.iso) EXPECT_EQ(a, b);
  ASSERT_EQ(diag.inner_by.size(), 1u);
  EXPECT_EQ(diag.inner_by[0], G.identity());

  EXPECT_THROW(goursat_decompose(G, G, {{G.S(), G.identity()}, {G.T(), G.identity()}}), DomainError);
}

TEST(SL2Goursat, ConjugationGraphRoundTrips) {
  std::mt19937_64 rng(7);
  for (std::uint32_t N : {5u, 7u}) {
    FiniteMatrixGroup G(N);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t x = rng() % G.size(), xi = G.inv(x);
      std::vector<std::pair<std::size_t, std::size_t>> gens;
      for (std::size_t s : {G.S(), G.T()}) gens.push_back({s, G.mul(G.mul(x, s), xi)});
      auto d = goursat_decompose(G, G, gens);
      EXPECT_EQ(d.quotient_order, G.size());
      EXPECT_NE(std::find(d.inner_by.begin(), d.inner_by.end(), x), d.inner_by.end());
      auto mem = product_closure(G, G, gens);
      EXPECT_EQ(goursat_reconstruct(G, G, d), mem);
      EXPECT_EQ(count(mem), G.size());
    }
  }
}

TEST(SL2Goursat, ProductOfDifferentLevels) {
  FiniteMatrixGroup A(5), B(7);
  // S and T generate both factors; the product group has the two simple factors
  auto d = goursat_decompose(A, B, {{A.S(), B.S()}, {A.T(), B.T()}});
  EXPECT_EQ(d.quotient_order, 1u);
  EXPECT_EQ(count(goursat_reconstruct(A, B, d)), A.size() * B.size());
}

TEST(SL2Lemma43, Examples) {
  FiniteMatrixGroup G(5);
  std::size_t e = G.identity(), S = G.S(), T = G.T();
  auto full = lemma43_check(G, 2, {{S, e}, {T, e}, {e, S}, {e, T}});
  EXPECT_TRUE(full.pairs_surjective);
  EXPECT_TRUE(full.equals_full);

  auto diag = lemma43_check(G, 3, {{S, S, e}, {T, T, e}, {e, e, S}, {e, e, T}}, 300000);
  EXPECT_FALSE(diag.pairs_surjective);
  ASSERT_TRUE(diag.failing_pair);
  EXPECT_EQ(*diag.failing_pair, std::make_pair(1u, 2u));

  std::mt19937_64 rng(11);
  std::vector<std::vector<std::size_t>> gens;
  Lemma43Result r;
  do {
    gens.push_back({rng() % G.size(), rng() % G.size(), rng() % G.size()});
    r = lemma43_check(G, 3, gens, 300000);
  } while (!r.pairs_surjective);
  EXPECT_TRUE(r.equals_full);
  EXPECT_EQ(r.order, 216000u);
  EXPECT_THROW(lemma43_check(G, 3, gens, 1000), ResourceError);
}
