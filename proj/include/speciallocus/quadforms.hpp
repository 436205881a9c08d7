#ifndef SPECIALLOCUS_QUADFORMS_HPP
#define SPECIALLOCUS_QUADFORMS_HPP

// Imaginary quadratic orders, positive definite binary quadratic forms and
// their class groups under Gauss composition.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace speciallocus {

struct ImaginaryQuadraticOrder {
  mpz_class D;    // discriminant, < 0
  mpz_class d_K;  // fundamental part
  mpz_class f;    // conductor
};

struct QuadraticForm {
  mpz_class a, b, c;

  mpz_class disc() const { return b * b - 4 * a * c; }
  bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator!=(const QuadraticForm& o) const { return !(*this == o); }
  // (a, b, c) lexicographic; b compared as signed.
  bool operator<(const QuadraticForm& o) const;
  std::string to_string() const;
};

bool is_discriminant(const mpz_class& D);       // D < 0 and D = 0,1 mod 4
bool is_fundamental(const mpz_class& D);
// Throws ValidationError when D is not a negative discriminant.
void require_discriminant(const mpz_class& D);

std::pair<mpz_class, mpz_class> conductor_decompose(const mpz_class& D);
ImaginaryQuadraticOrder make_order(const mpz_class& D);

bool is_reduced(const QuadraticForm& q);
QuadraticForm reduce_form(const QuadraticForm& q);
QuadraticForm principal_form(const mpz_class& D);
// Dirichlet composition of forms of equal discriminant, reduced.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm inverse(const QuadraticForm& f);

// All primitive reduced forms of discriminant D, sorted.
std::vector<QuadraticForm> reduced_forms(const mpz_class& D);
// Word-sized count of primitive reduced forms, for scanning.
std::uint64_t class_number(std::int64_t D);

class FormClassGroup {
 public:
  const ImaginaryQuadraticOrder& order() const { return order_; }
  const std::vector<QuadraticForm>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::size_t identity() const { return 0; }

  std::size_t index_of(const QuadraticForm& q) const;  // q need not be reduced
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  std::uint64_t element_order(std::size_t i) const;
  // Invariant factors n_1 | n_2 | ... ; empty for the trivial group.
  std::vector<std::uint64_t> structure() const;

 private:
  friend FormClassGroup class_group(const mpz_class& D);
  ImaginaryQuadraticOrder order_;
  std::vector<QuadraticForm> classes_;  // classes_[0] is principal
  std::map<QuadraticForm, std::size_t> index_;
};

// Class group built by closing the principal class under composition with
// enumerated forms; throws if the closure disagrees with the enumeration.
FormClassGroup class_group(const mpz_class& D);

// Kronecker symbol (D|l) == 1.  Throws DomainError if l is not prime.
bool is_split(const mpz_class& l, const mpz_class& D);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_QUADFORMS_HPP
