#ifndef SPECIALLOCUS_CHOWDEG_HPP
#define SPECIALLOCUS_CHOWDEG_HPP

// The ring Z[e_1..e_n]/(e_i^2) of multidegree classes on (P^1)^n, and the
// dimension profiles I -> dim p_I Z with their minimal deficient subsets.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace speciallocus {

// Bit i-1 stands for factor i.
using Subset = std::uint64_t;

unsigned subset_size(Subset s);
std::vector<unsigned> subset_indices(Subset s);  // 1-based, ascending
Subset subset_of(const std::vector<unsigned>& indices);  // 1-based
std::string subset_to_string(Subset s);  // "{1,3}"

class MultiClass {
 public:
  explicit MultiClass(unsigned n = 1);
  static MultiClass one(unsigned n);
  static MultiClass point(unsigned n);          // e_1 ... e_n
  static MultiClass epsilon(unsigned n, unsigned i);
  static MultiClass sum_epsilon(unsigned n);    // e_1 + ... + e_n

  unsigned n() const { return n_; }
  const std::map<Subset, mpz_class>& terms() const { return terms_; }
  const mpz_class& coeff(Subset I) const;
  void set(Subset I, const mpz_class& a);  // a >= 0
  bool is_zero() const { return terms_.empty(); }
  // n - |I| for the common size of the supports; nullopt for the zero class.
  // DomainError if the class mixes codimensions.
  std::optional<unsigned> dimension() const;

  MultiClass operator+(const MultiClass& o) const;
  MultiClass scaled(const mpz_class& k) const;
  bool operator==(const MultiClass& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const MultiClass& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  unsigned n_;
  std::map<Subset, mpz_class> terms_;
};

MultiClass chow_mul(const MultiClass& u, const MultiClass& v);
MultiClass chow_pow(const MultiClass& u, unsigned k);
// d! * sum_{|I| = n-d} a_I
mpz_class very_ample_degree(const MultiClass& z);
// Every coefficient times (l+1)^n.
MultiClass hecke_pushforward(const MultiClass& z, unsigned long l);
// c * (e_1 + ... + e_n) with c = (l+1)^n d! sum_{|I|=n-d} a_I.
MultiClass hypersurface_bound(const MultiClass& z, unsigned long l);
// Top coefficient of u*v; requires dim u + dim v = n.
mpz_class intersection_number(const MultiClass& u, const MultiClass& v);

class DimensionProfile {
 public:
  // dims must have an entry for every subset of {1..n}, n <= 20.
  DimensionProfile(unsigned n, const std::map<Subset, long>& dims);
  // Builds the profile from f(subset).
  template <class F>
  static DimensionProfile from_function(unsigned n, F f) {
    std::map<Subset, long> m;
    for (Subset s = 0; s < (Subset(1) << n); ++s) m[s] = f(s);
    return DimensionProfile(n, m);
  }
  unsigned n() const { return n_; }
  long dim(Subset I) const { return dims_.at(I); }

 private:
  unsigned n_;
  std::vector<long> dims_;
};

std::vector<Subset> minimal_subsets(const DimensionProfile& p);
// True iff every minimal I has |I| <= 2 and verdicts[I]; ValidationError when
// a minimal set of size <= 2 has no verdict.
bool specialness_criterion(const std::vector<Subset>& minimal, const std::map<Subset, bool>& verdicts);

}  // namespace speciallocus

#endif  // SPECIALLOCUS_CHOWDEG_HPP
