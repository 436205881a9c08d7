#include "speciallocus/chowdeg.hpp"

#include <bit>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"

namespace speciallocus {

unsigned subset_size(Subset s) { return static_cast<unsigned>(std::popcount(s)); }

std::vector<unsigned> subset_indices(Subset s) {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < 64; ++i)
    if (s >> i & 1) out.push_back(i + 1);
  return out;
}

Subset subset_of(const std::vector<unsigned>& indices) {
  Subset s = 0;
  for (unsigned i : indices) {
    if (i < 1 || i > 64) throw ValidationError("subset index " + std::to_string(i) + " outside 1..64");
    s |= Subset(1) << (i - 1);
  }
  return s;
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (unsigned i : subset_indices(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

namespace {

Subset full(unsigned n) { return n == 64 ? ~Subset(0) : (Subset(1) << n) - 1; }

}  // namespace

MultiClass::MultiClass(unsigned n) : n_(n) {
  if (n < 1 || n > 64) throw ValidationError("number of factors must be in 1..64");
}

MultiClass MultiClass::one(unsigned n) {
  MultiClass c(n);
  c.set(0, 1);
  return c;
}

MultiClass MultiClass::point(unsigned n) {
  MultiClass c(n);
  c.set(full(n), 1);
  return c;
}

MultiClass MultiClass::epsilon(unsigned n, unsigned i) {
  MultiClass c(n);
  if (i < 1 || i > n) throw ValidationError("factor index out of range");
  c.set(Subset(1) << (i - 1), 1);
  return c;
}

MultiClass MultiClass::sum_epsilon(unsigned n) {
  MultiClass c(n);
  for (unsigned i = 0; i < n; ++i) c.set(Subset(1) << i, 1);
  return c;
}

const mpz_class& MultiClass::coeff(Subset I) const {
  static const mpz_class zero = 0;
  auto it = terms_.find(I);
  return it == terms_.end() ? zero : it->second;
}

void MultiClass::set(Subset I, const mpz_class& a) {
  if (I & ~full(n_)) throw ValidationError("subset " + subset_to_string(I) + " not inside {1.." + std::to_string(n_) + "}");
  if (a < 0) throw ValidationError("multidegree coefficients are non-negative");
  if (a == 0) terms_.erase(I);
  else terms_[I] = a;
}

std::optional<unsigned> MultiClass::dimension() const {
  if (terms_.empty()) return std::nullopt;
  unsigned k = subset_size(terms_.begin()->first);
  for (const auto& [I, a] : terms_)
    if (subset_size(I) != k) throw DomainError("class mixes codimensions " + std::to_string(k) + " and " +
                                               std::to_string(subset_size(I)));
  return n_ - k;
}

MultiClass MultiClass::operator+(const MultiClass& o) const {
  if (o.n_ != n_) throw DomainError("classes live on different numbers of factors");
  MultiClass r = *this;
  for (const auto& [I, a] : o.terms_) r.terms_[I] += a;
  return r;
}

MultiClass MultiClass::scaled(const mpz_class& k) const {
  if (k < 0) throw DomainError("negative scale");
  MultiClass r(n_);
  if (k == 0) return r;
  for (const auto& [I, a] : terms_) r.terms_[I] = a * k;
  return r;
}

std::string MultiClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [I, a] : terms_) {
    if (!s.empty()) s += " + ";
    s += a.get_str();
    for (unsigned i : subset_indices(I)) s += "*e" + std::to_string(i);
  }
  return s;
}

MultiClass chow_mul(const MultiClass& u, const MultiClass& v) {
  if (u.n() != v.n()) throw DomainError("chow_mul: classes on " + std::to_string(u.n()) + " and " +
                                        std::to_string(v.n()) + " factors");
  std::map<Subset, mpz_class> acc;
  for (const auto& [I, a] : u.terms())
    for (const auto& [J, b] : v.terms())
      if ((I & J) == 0) acc[I | J] += a * b;
  MultiClass r(u.n());
  for (const auto& [K, c] : acc) r.set(K, c);
  return r;
}

MultiClass chow_pow(const MultiClass& u, unsigned k) {
  MultiClass r = MultiClass::one(u.n());
  for (unsigned i = 0; i < k; ++i) r = chow_mul(r, u);
  return r;
}

namespace {

mpz_class degree_sum(const MultiClass& z, unsigned& d) {
  auto dim = z.dimension();
  if (!dim) {
    d = 0;
    return 0;
  }
  d = *dim;
  mpz_class s = 0;
  for (const auto& [I, a] : z.terms()) s += a;
  return s;
}

}  // namespace

mpz_class very_ample_degree(const MultiClass& z) {
  unsigned d;
  mpz_class s = degree_sum(z, d);
  return factorial(d) * s;
}

MultiClass hecke_pushforward(const MultiClass& z, unsigned long l) {
  if (!is_prime(std::uint64_t(l))) throw DomainError(std::to_string(l) + " is not prime");
  return z.scaled(pow_ui(mpz_class(l + 1), z.n()));
}

MultiClass hypersurface_bound(const MultiClass& z, unsigned long l) {
  if (!is_prime(std::uint64_t(l))) throw DomainError(std::to_string(l) + " is not prime");
  unsigned d;
  mpz_class s = degree_sum(z, d);
  mpz_class c = pow_ui(mpz_class(l + 1), z.n()) * factorial(d) * s;
  return MultiClass::sum_epsilon(z.n()).scaled(c);
}

mpz_class intersection_number(const MultiClass& u, const MultiClass& v) {
  if (u.n() != v.n()) throw DomainError("intersection of classes on different numbers of factors");
  auto du = u.dimension(), dv = v.dimension();
  if (!du || !dv) return 0;
  if (*du + *dv != u.n())
    throw DomainError("dimensions " + std::to_string(*du) + " and " + std::to_string(*dv) +
                      " are not complementary in " + std::to_string(u.n()));
  return chow_mul(u, v).coeff(full(u.n()));
}

DimensionProfile::DimensionProfile(unsigned n, const std::map<Subset, long>& dims) : n_(n) {
  if (n < 1 || n > 20) throw ValidationError("dimension profiles support 1 <= n <= 20");
  Subset count = Subset(1) << n;
  dims_.assign(count, 0);
  for (Subset s = 0; s < count; ++s) {
    auto it = dims.find(s);
    if (it == dims.end()) throw ValidationError("profile has no value for " + subset_to_string(s));
    dims_[s] = it->second;
  }
  for (const auto& [s, v] : dims)
    if (s >= count) throw ValidationError("profile entry " + subset_to_string(s) + " outside {1.." + std::to_string(n) + "}");
  if (dims_[0] != 0) throw ValidationError("axiom dims(empty) = 0 violated");
  for (unsigned i = 0; i < n; ++i) {
    long v = dims_[Subset(1) << i];
    if (v != 0 && v != 1) throw ValidationError("axiom dims({i}) in {0,1} violated at " + subset_to_string(Subset(1) << i));
  }
  for (Subset s = 0; s < count; ++s)
    for (unsigned i = 0; i < n; ++i) {
      Subset t = s | (Subset(1) << i);
      if (t == s) continue;
      if (dims_[t] < dims_[s])
        throw ValidationError("axiom monotone violated: dims(" + subset_to_string(s) + ") > dims(" +
                              subset_to_string(t) + ")");
      if (dims_[t] > dims_[s] + 1)
        throw ValidationError("axiom unit steps violated: dims(" + subset_to_string(t) + ") > dims(" +
                              subset_to_string(s) + ") + 1");
    }
}

std::vector<Subset> minimal_subsets(const DimensionProfile& p) {
  std::vector<Subset> out;
  Subset count = Subset(1) << p.n();
  for (Subset I = 1; I < count; ++I) {
    long k = subset_size(I);
    if (p.dim(I) >= k) continue;
    // with unit steps, every proper subset is full iff every maximal one is
    bool minimal = true;
    for (Subset rest = I; rest && minimal; rest &= rest - 1) {
      Subset J = I & ~(rest & -rest);
      if (p.dim(J) != k - 1) minimal = false;
    }
    if (minimal) out.push_back(I);
  }
  return out;
}

bool specialness_criterion(const std::vector<Subset>& minimal, const std::map<Subset, bool>& verdicts) {
  for (Subset I : minimal)
    if (subset_size(I) <= 2 && !verdicts.count(I)) throw ValidationError("no verdict for minimal subset " + subset_to_string(I));
  for (Subset I : minimal) {
    if (subset_size(I) > 2) return false;
    if (!verdicts.at(I)) return false;
  }
  return true;
}

}  // namespace speciallocus
