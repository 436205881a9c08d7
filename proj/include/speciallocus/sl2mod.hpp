#ifndef SPECIALLOCUS_SL2MOD_HPP
#define SPECIALLOCUS_SL2MOD_HPP

// The groups SL2(Z/N)/{+-1}: enumeration, subgroup closure, low-index
// search, normal subgroups of prime-power level, the Sym^2 representation,
// Goursat data for subgroups of products and the pairwise-projection lemma.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace speciallocus {

using Mat2N = std::array<std::uint32_t, 4>;  // row-major entries mod N

class FiniteMatrixGroup {
 public:
  // ResourceError when the order exceeds budget.
  explicit FiniteMatrixGroup(std::uint32_t N, std::uint64_t budget = 10000);

  std::uint32_t modulus() const { return N_; }
  std::size_t size() const { return elems_.size(); }
  const Mat2N& element(std::size_t i) const { return elems_[i]; }
  // Canonical representative min(M, -M); DomainError unless det M = 1.
  Mat2N canonical(const Mat2N& m) const;
  std::size_t index_of(const Mat2N& m) const;
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  std::size_t S() const { return s_; }
  std::size_t T() const { return t_; }
  // g * s for the generators S, T and T^-1 (S is an involution here).
  std::size_t right(int which, std::size_t g) const { return right_[which][g]; }
  std::string to_string(std::size_t i) const;

 private:
  std::uint64_t key(const Mat2N& m) const;
  Mat2N raw_mul(const Mat2N& x, const Mat2N& y) const;
  std::uint32_t N_;
  std::vector<Mat2N> elems_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
  std::size_t s_ = 0, t_ = 0;
  std::array<std::vector<std::uint32_t>, 3> right_;
};

// N^3 prod_{p | N} (1 - 1/p^2), halved when N > 2.
std::uint64_t group_order(std::uint32_t N);

struct Subgroup {
  std::vector<bool> member;
  std::vector<std::size_t> gens;
  std::size_t order = 0;
  bool operator==(const Subgroup& o) const { return member == o.member; }
};

Subgroup generate(const FiniteMatrixGroup& G, const std::vector<std::size_t>& gens);
Subgroup normal_closure(const FiniteMatrixGroup& G, const std::vector<std::size_t>& gens);
bool is_normal(const FiniteMatrixGroup& G, const Subgroup& H);

struct MinIndexResult {
  std::optional<unsigned> index;  // none up to cap
  Subgroup witness;
  unsigned cap = 0;
  std::uint64_t nodes = 0;
};

struct MinIndexOptions {
  std::uint64_t budget = 10000;         // group order
  std::uint64_t node_budget = 50000000;  // search nodes; ResourceError past it
};

// Smallest index <= cap of a proper subgroup, by coset-table backtracking.
MinIndexResult min_proper_index(std::uint32_t N, unsigned cap, const MinIndexOptions& opt = {});

struct NormalSubgroup {
  Subgroup H;
  std::uint32_t level;  // H is the kernel of reduction mod level (level 1: all of G)
};

// N = l^e with l >= 5 prime.  Lists every normal subgroup, each matched to a
// reduction kernel; DomainError if one is not (never expected).
std::vector<NormalSubgroup> normal_subgroups(std::uint32_t N, std::uint64_t budget = 10000);

// No proper nonzero subspace of Sym^2(F_l^2) is stable under SL2(F_l).
bool sym2_irreducible(std::uint32_t l);

// Every element of SL2(Z/l^e) killed by l reduces to 1 mod l^(e-1).
bool ltorsion_in_kernel(std::uint32_t l, unsigned e, std::uint64_t budget = 100000);

struct GoursatData {
  Subgroup H1;  // {b : (1, b) in H}, inside B
  Subgroup H2;  // {a : (a, 1) in H}, inside A
  // Isomorphism A/H2 -> B/H1 as pairs of coset representatives (least index).
  std::vector<std::pair<std::size_t, std::size_t>> iso;
  std::size_t quotient_order = 0;
  // When A and B coincide and H2 = H1 = 1: every x with iso(a) = x a x^-1.
  std::vector<std::size_t> inner_by;
};

// H generated by pairs (a, b) in A x B; DomainError naming a projection that
// is not surjective.
GoursatData goursat_decompose(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B,
                              const std::vector<std::pair<std::size_t, std::size_t>>& gens);
// The subgroup {(a, b) : iso(a H2) = b H1} as membership over a * |B| + b.
std::vector<bool> goursat_reconstruct(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B, const GoursatData& g);
std::vector<bool> product_closure(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& gens);

struct Lemma43Result {
  bool pairs_surjective = false;
  std::optional<std::pair<unsigned, unsigned>> failing_pair;  // 1-based
  bool equals_full = false;
  std::uint64_t order = 0;  // |H| when computed
};

// H < G^n generated by n-tuples of element indices.
Lemma43Result lemma43_check(const FiniteMatrixGroup& G, unsigned n, const std::vector<std::vector<std::size_t>>& gens,
                            std::uint64_t budget = 10000);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_SL2MOD_HPP
