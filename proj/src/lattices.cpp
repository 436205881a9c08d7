#include "speciallocus/lattices.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"

namespace speciallocus {

QMat2 qmat(long a, long b, long c, long d) { return {mpq_class(a), mpq_class(b), mpq_class(c), mpq_class(d)}; }

QMat2 operator*(const QMat2& x, const QMat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

namespace {

mpq_class det(const QMat2& m) { return m[0] * m[3] - m[1] * m[2]; }

QMat2 inverse(const QMat2& m) {
  mpq_class D = det(m);
  if (D == 0) throw DomainError("singular basis");
  return {m[3] / D, -m[1] / D, -m[2] / D, m[0] / D};
}

// Integer entries with gcd 1, a positive rational multiple of the input.
std::vector<mpz_class> primitive_integers(const std::vector<mpq_class>& v) {
  mpz_class den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class t = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    out.push_back(t);
  }
  if (g == 0) throw DomainError("zero matrix");
  for (auto& x : out) x /= g;
  return out;
}

}  // namespace

QMat2 LatticeClass::basis() const { return {mpq_class(a_), mpq_class(b_), mpq_class(0), mpq_class(d_)}; }

bool LatticeClass::operator<(const LatticeClass& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  return d_ < o.d_;
}

std::string LatticeClass::to_string() const {
  return "[[" + a_.get_str() + "," + b_.get_str() + "],[0," + d_.get_str() + "]]";
}

LatticeClass lattice_from_columns(const std::vector<std::array<mpq_class, 2>>& cols) {
  std::vector<mpq_class> flat;
  for (const auto& c : cols) {
    flat.push_back(c[0]);
    flat.push_back(c[1]);
  }
  if (flat.empty()) throw DomainError("no columns");
  std::vector<mpz_class> z = primitive_integers(flat);
  std::size_t k = cols.size();
  std::vector<mpz_class> x(k), y(k);
  for (std::size_t j = 0; j < k; ++j) {
    x[j] = z[2 * j];
    y[j] = z[2 * j + 1];
  }
  // gather the bottom row into one pivot column
  long pivot = -1;
  for (std::size_t j = 0; j < k; ++j) {
    if (y[j] == 0) continue;
    if (pivot < 0) {
      pivot = static_cast<long>(j);
      continue;
    }
    mpz_class g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), y[pivot].get_mpz_t(), y[j].get_mpz_t());
    mpz_class yi = y[pivot] / g, yj = y[j] / g;
    mpz_class nx = u * x[pivot] + v * x[j];
    mpz_class ox = yj * x[pivot] - yi * x[j];
    x[pivot] = nx;
    y[pivot] = g;
    x[j] = ox;
    y[j] = 0;
  }
  if (pivot < 0) throw DomainError("columns span a lattice of rank < 2");
  mpz_class a = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (static_cast<long>(j) != pivot) mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), x[j].get_mpz_t());
  if (a == 0) throw DomainError("columns span a lattice of rank < 2");
  mpz_class d = y[pivot], b = x[pivot];
  if (d < 0) {
    d = -d;
    b = -b;
  }
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  mpz_class g = gcd(gcd(a, b), d);
  LatticeClass L;
  L.a_ = a / g;
  L.b_ = b / g;
  L.d_ = d / g;
  return L;
}

LatticeClass canonicalize(const QMat2& basis) {
  if (det(basis) == 0) throw DomainError("singular basis");
  return lattice_from_columns({{basis[0], basis[2]}, {basis[1], basis[3]}});
}

LatticeClass apply_matrix(const QMat2& g, const LatticeClass& L) { return canonicalize(g * L.basis()); }

namespace {

// Primitive integer matrix P with L2 = B1 P up to scaling.
std::vector<mpz_class> transition(const LatticeClass& L1, const LatticeClass& L2) {
  QMat2 t = inverse(L1.basis()) * L2.basis();
  return primitive_integers({t[0], t[1], t[2], t[3]});
}

}  // namespace

mpz_class relative_position(const LatticeClass& L1, const LatticeClass& L2) {
  auto p = transition(L1, L2);
  return abs(p[0] * p[3] - p[1] * p[2]);
}

unsigned tree_distance(const LatticeClass& L1, const LatticeClass& L2, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return valuation(relative_position(L1, L2), p);
}

TripleCenter center_of_three(const LatticeClass& L1, const LatticeClass& L2, const LatticeClass& L3) {
  // Scale L2, L3 to sublattices of L1 with cyclic quotient; the median of the
  // three vertices is their sum at every prime.
  QMat2 B1 = L1.basis();
  std::vector<std::array<mpq_class, 2>> cols;
  for (const LatticeClass* L : {&L2, &L3}) {
    auto p = transition(L1, *L);
    QMat2 P = {mpq_class(p[0]), mpq_class(p[1]), mpq_class(p[2]), mpq_class(p[3])};
    QMat2 S = B1 * P;
    cols.push_back({S[0], S[2]});
    cols.push_back({S[1], S[3]});
  }
  TripleCenter t{lattice_from_columns(cols), 0, 0, 0};
  t.n1 = relative_position(t.C, L1);
  t.n2 = relative_position(t.C, L2);
  t.n3 = relative_position(t.C, L3);
  return t;
}

namespace {

void validate_label(const std::vector<std::uint64_t>& label) {
  if (label.empty()) throw ValidationError("label needs at least one entry");
  for (auto n : label)
    if (n < 1) throw ValidationError("label entries must be positive");
}

}  // namespace

std::vector<std::vector<mpz_class>> label_pairwise(const std::vector<std::uint64_t>& label) {
  validate_label(label);
  std::size_t k = label.size();
  std::vector<std::vector<mpz_class>> m(k, std::vector<mpz_class>(k, 1));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) m[i][j] = mpz_class(label[i]) * label[j];
  return m;
}

mpz_class label_tuple_count(const std::vector<std::uint64_t>& label) {
  validate_label(label);
  std::uint64_t N = 1;
  double bound = 1;
  for (auto n : label) {
    N = std::lcm(N, n);
    if (N > 720) throw ResourceError("lcm of the label exceeds 720");
    bound *= static_cast<double>(psi(n));
  }
  if (bound > 1e7) throw ResourceError("more than 10^7 candidate tuples");
  // cyclic subgroups of (Z/N)^2 of each order, as sorted element lists
  std::map<std::uint64_t, std::vector<std::vector<std::uint32_t>>> subs;
  for (auto n : label) {
    if (subs.count(n)) continue;
    std::set<std::vector<std::uint32_t>> found;
    std::uint64_t s = N / n;
    for (std::uint64_t u = 0; u < n; ++u)
      for (std::uint64_t v = 0; v < n; ++v) {
        if (std::gcd(std::gcd(u, v), n) != 1) continue;
        std::vector<std::uint32_t> el;
        for (std::uint64_t t = 0; t < n; ++t)
          el.push_back(static_cast<std::uint32_t>(((t * u * s) % N) * N + (t * v * s) % N));
        std::sort(el.begin(), el.end());
        found.insert(el);
      }
    if (found.size() != psi(n)) throw DomainError("internal: cyclic subgroup count differs from psi");
    subs[n].assign(found.begin(), found.end());
  }
  auto trivial_meet = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else {
        ++common;
        ++i;
        ++j;
      }
    }
    return common == 1;
  };
  std::size_t k = label.size();
  std::vector<const std::vector<std::uint32_t>*> chosen(k);
  mpz_class count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      ++count;
      return;
    }
    for (const auto& H : subs[label[i]]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = trivial_meet(*chosen[j], H);
      if (!ok) continue;
      chosen[i] = &H;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

MultiClass label_multidegree(const std::vector<std::uint64_t>& label) {
  if (label.size() < 2) throw DomainError("label_multidegree needs at least two entries");
  if (label.size() > 64) throw ValidationError("at most 64 factors");
  // Every coordinate map from the moduli curve of (E, H_1..H_k) to the j-line
  // has degree equal to the tuple count; the curve maps birationally onto its image.
  mpz_class T = label_tuple_count(label);
  unsigned k = static_cast<unsigned>(label.size());
  MultiClass z(k);
  Subset all = k == 64 ? ~Subset(0) : (Subset(1) << k) - 1;
  for (unsigned i = 0; i < k; ++i) z.set(all & ~(Subset(1) << i), T);
  return z;
}

CountingReport counting_report(const std::vector<std::uint64_t>& n_vals, std::uint64_t r, std::uint64_t m) {
  if (r < 1 || m < 1) throw ValidationError("r and m must be >= 1");
  CountingReport rep;
  rep.r = r;
  rep.m = m;
  auto row = [&](std::uint64_t n) {
    CountingRow c;
    c.n = n;
    c.psi = psi(n);
    c.phi = euler_phi(n);
    c.pi = distinct_prime_count(n);
    mpz_class two = mpz_class(1) << c.pi;
    c.psi_ok = mpz_class(c.psi) <= two * r * m;
    c.phi_ok = mpz_class(c.phi) <= two * r;
    return c;
  };
  for (auto n : n_vals) {
    if (n < 1) throw ValidationError("n must be positive");
    rep.rows.push_back(row(n));
  }
  // 2^pi(n) <= d(n) <= 2 sqrt(n) and psi(n) >= n, so psi(n)/2^pi(n) >= sqrt(n)/2
  mpz_class rm = mpz_class(r) * m;
  mpz_class cut = 4 * rm * rm;
  if (cut > 10000000) throw ResourceError("counting cutoff 4 (r m)^2 exceeds 10^7");
  rep.cutoff = cut.get_ui();
  rep.largest = 0;
  for (std::uint64_t n = 1; n <= rep.cutoff; ++n)
    if (row(n).psi_ok) {
      rep.psi_small.push_back(n);
      rep.largest = n;
    }
  return rep;
}

}  // namespace speciallocus
