#ifndef SPECIALLOCUS_LATTICES_HPP
#define SPECIALLOCUS_LATTICES_HPP

// Lattices in Q^2 up to scaling, relative positions and tree distances, the
// center of three lattices, special-curve labels and the counting bounds.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "speciallocus/chowdeg.hpp"

namespace speciallocus {

// Row-major [[m[0], m[1]], [m[2], m[3]]]; the columns span the lattice.
using QMat2 = std::array<mpq_class, 4>;

QMat2 qmat(long a, long b, long c, long d);
QMat2 operator*(const QMat2& x, const QMat2& y);

// Canonical basis [[a, b], [0, d]]: integers, content 1, a, d > 0, 0 <= b < a.
class LatticeClass {
 public:
  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& d() const { return d_; }
  QMat2 basis() const;
  bool operator==(const LatticeClass& o) const { return a_ == o.a_ && b_ == o.b_ && d_ == o.d_; }
  bool operator!=(const LatticeClass& o) const { return !(*this == o); }
  bool operator<(const LatticeClass& o) const;
  std::string to_string() const;

 private:
  friend LatticeClass canonicalize(const QMat2& basis);
  friend LatticeClass lattice_from_columns(const std::vector<std::array<mpq_class, 2>>& cols);
  mpz_class a_ = 1, b_ = 0, d_ = 1;
};

// DomainError for a singular basis.
LatticeClass canonicalize(const QMat2& basis);
// Class of the lattice spanned by the given columns (rank 2 required).
LatticeClass lattice_from_columns(const std::vector<std::array<mpq_class, 2>>& cols);
// g applied to the lattice: columns g * basis.
LatticeClass apply_matrix(const QMat2& g, const LatticeClass& L);

// e2 / e1 for the elementary divisors of the transition matrix.
mpz_class relative_position(const LatticeClass& L1, const LatticeClass& L2);
unsigned tree_distance(const LatticeClass& L1, const LatticeClass& L2, std::uint64_t p);

struct TripleCenter {
  LatticeClass C;
  mpz_class n1, n2, n3;
};
TripleCenter center_of_three(const LatticeClass& L1, const LatticeClass& L2, const LatticeClass& L3);

// n_ij = n_i n_j off the diagonal, 1 on it.
std::vector<std::vector<mpz_class>> label_pairwise(const std::vector<std::uint64_t>& label);
// Number of tuples (H_1..H_k) of cyclic subgroups of E[N] with |H_i| = n_i
// and pairwise trivial intersections.
mpz_class label_tuple_count(const std::vector<std::uint64_t>& label);
// Dimension-one class in (P^1)^k; k >= 2.
MultiClass label_multidegree(const std::vector<std::uint64_t>& label);

struct CountingRow {
  std::uint64_t n, psi, phi;
  unsigned pi;
  bool psi_ok;  // psi(n) <= 2^pi(n) r m
  bool phi_ok;  // phi(n) <= 2^pi(n) r
};

struct CountingReport {
  std::uint64_t r, m;
  std::vector<CountingRow> rows;
  std::uint64_t cutoff;                  // no n > cutoff has psi(n)/2^pi(n) <= r m
  std::vector<std::uint64_t> psi_small;  // every n with psi(n)/2^pi(n) <= r m
  std::uint64_t largest;                 // max of psi_small
};

CountingReport counting_report(const std::vector<std::uint64_t>& n_vals, std::uint64_t r, std::uint64_t m);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_LATTICES_HPP
