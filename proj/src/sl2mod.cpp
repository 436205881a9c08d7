#include "speciallocus/sl2mod.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"

namespace speciallocus {

std::uint64_t group_order(std::uint32_t N) {
  if (N < 2) throw DomainError("modulus must be >= 2");
  // N^3 prod (1 - 1/p^2) = prod p^(3e-2) (p^2 - 1)
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(N)) {
    for (unsigned k = 0; k + 2 < 3 * e; ++k) r *= p;
    r *= p * p - 1;
  }
  return N > 2 ? r / 2 : r;
}

FiniteMatrixGroup::FiniteMatrixGroup(std::uint32_t N, std::uint64_t budget) : N_(N) {
  if (N < 2) throw DomainError("modulus must be >= 2");
  std::uint64_t ord = group_order(N);
  if (ord > budget)
    throw ResourceError("|SL2(Z/" + std::to_string(N) + ")/+-1| = " + std::to_string(ord) +
                        " exceeds the enumeration budget " + std::to_string(budget));
  std::uint64_t N4 = std::uint64_t(N) * N * N * N;
  if (N4 <= (1u << 22)) dense_.assign(N4, -1);
  auto insert = [&](const Mat2N& m) -> bool {
    std::uint64_t k = key(m);
    if (!dense_.empty()) {
      if (dense_[k] >= 0) return false;
      dense_[k] = static_cast<std::int32_t>(elems_.size());
    } else {
      if (!sparse_.emplace(k, static_cast<std::uint32_t>(elems_.size())).second) return false;
    }
    elems_.push_back(m);
    return true;
  };
  Mat2N I{1 % N, 0, 0, 1 % N};
  Mat2N Sm{0, N - 1, 1, 0};
  Mat2N Tm{1 % N, 1 % N, 0, 1 % N};
  Mat2N Ti{1 % N, N - 1, 0, 1 % N};
  insert(canonical(I));
  for (std::size_t q = 0; q < elems_.size(); ++q) {
    Mat2N g = elems_[q];
    insert(canonical(raw_mul(g, Sm)));
    insert(canonical(raw_mul(g, Tm)));
  }
  if (elems_.size() != ord) throw DomainError("internal: enumerated order differs from the formula");
  s_ = index_of(Sm);
  t_ = index_of(Tm);
  const Mat2N gens[3] = {Sm, Tm, Ti};
  for (int w = 0; w < 3; ++w) {
    right_[w].resize(elems_.size());
    for (std::size_t g = 0; g < elems_.size(); ++g)
      right_[w][g] = static_cast<std::uint32_t>(index_of(raw_mul(elems_[g], gens[w])));
  }
}

std::uint64_t FiniteMatrixGroup::key(const Mat2N& m) const {
  return ((std::uint64_t(m[0]) * N_ + m[1]) * N_ + m[2]) * N_ + m[3];
}

Mat2N FiniteMatrixGroup::raw_mul(const Mat2N& x, const Mat2N& y) const {
  std::uint64_t N = N_;
  return {static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[0] + std::uint64_t(x[1]) * y[2]) % N),
          static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[1] + std::uint64_t(x[1]) * y[3]) % N),
          static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[0] + std::uint64_t(x[3]) * y[2]) % N),
          static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[1] + std::uint64_t(x[3]) * y[3]) % N)};
}

Mat2N FiniteMatrixGroup::canonical(const Mat2N& m0) const {
  Mat2N m;
  for (int i = 0; i < 4; ++i) m[i] = m0[i] % N_;
  std::uint64_t det = (std::uint64_t(m[0]) * m[3] + std::uint64_t(N_ - 1) * ((std::uint64_t(m[1]) * m[2]) % N_)) % N_;
  if (det != 1 % N_) throw DomainError("matrix does not have determinant 1 mod " + std::to_string(N_));
  Mat2N neg;
  for (int i = 0; i < 4; ++i) neg[i] = (N_ - m[i]) % N_;
  return std::min(m, neg);
}

std::size_t FiniteMatrixGroup::index_of(const Mat2N& m) const {
  Mat2N c = canonical(m);
  std::uint64_t k = key(c);
  if (!dense_.empty()) return static_cast<std::size_t>(dense_[k]);
  return sparse_.at(k);
}

std::size_t FiniteMatrixGroup::mul(std::size_t i, std::size_t j) const {
  return index_of(raw_mul(elems_[i], elems_[j]));
}

std::size_t FiniteMatrixGroup::inv(std::size_t i) const {
  const Mat2N& m = elems_[i];
  return index_of({m[3], (N_ - m[1]) % N_, (N_ - m[2]) % N_, m[0]});
}

std::string FiniteMatrixGroup::to_string(std::size_t i) const {
  const Mat2N& m = elems_[i];
  return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," +
         std::to_string(m[3]) + "]]";
}

Subgroup generate(const FiniteMatrixGroup& G, const std::vector<std::size_t>& gens) {
  Subgroup H;
  H.member.assign(G.size(), false);
  H.gens = gens;
  std::vector<std::size_t> list{G.identity()};
  H.member[G.identity()] = true;
  for (std::size_t q = 0; q < list.size(); ++q)
    for (std::size_t x : gens) {
      std::size_t y = G.mul(list[q], x);
      if (!H.member[y]) {
        H.member[y] = true;
        list.push_back(y);
      }
    }
  H.order = list.size();
  return H;
}

Subgroup normal_closure(const FiniteMatrixGroup& G, const std::vector<std::size_t>& gens) {
  std::vector<std::size_t> g = gens;
  Subgroup H = generate(G, g);
  const std::size_t conj[2] = {G.S(), G.T()};
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t s : conj) {
        std::size_t c = G.mul(G.mul(G.inv(s), g[i]), s);
        if (!H.member[c]) {
          g.push_back(c);
          H = generate(G, g);
          changed = true;
        }
      }
  }
  return H;
}

bool is_normal(const FiniteMatrixGroup& G, const Subgroup& H) {
  for (std::size_t h : H.gens)
    for (std::size_t s : {G.S(), G.T()})
      if (!H.member[G.mul(G.mul(G.inv(s), h), s)]) return false;
  return true;
}

// ------------------------------------------------------------ low index

namespace {

class LowIndex {
 public:
  LowIndex(const FiniteMatrixGroup& G, unsigned cap, std::uint64_t node_budget)
      : G_(G), cap_(cap), node_budget_(node_budget), c_(G.size(), -1), members_(cap) {
    for (auto& p : pi_) p.assign(cap, -1);
    for (auto& p : pinv_) p.assign(cap, -1);
  }

  MinIndexResult run() {
    best_ = cap_ + 1;
    n_ = 1;
    if (assign(G_.identity(), 0) && propagate()) search();
    MinIndexResult r;
    r.cap = cap_;
    r.nodes = nodes_;
    if (best_ <= cap_) {
      r.index = best_;
      std::vector<std::size_t> gens;
      Subgroup H;
      H.member.assign(G_.size(), false);
      H.member[G_.identity()] = true;
      H.order = 1;
      for (std::size_t g : witness_) {
        if (H.member[g]) continue;
        gens.push_back(g);
        H = generate(G_, gens);
      }
      r.witness = H;
    }
    return r;
  }

 private:
  struct Undo {
    bool is_label;
    std::uint32_t a, b;  // label: element; define: generator, point
  };

  std::size_t fwd(int s, std::size_t g) const { return G_.right(s == 0 ? 0 : 1, g); }
  std::size_t bwd(int s, std::size_t g) const { return G_.right(s == 0 ? 0 : 2, g); }

  bool assign(std::size_t g, int x) {
    if (c_[g] == x) return true;
    if (c_[g] != -1) return false;
    c_[g] = x;
    members_[x].push_back(static_cast<std::uint32_t>(g));
    trail_.push_back({true, static_cast<std::uint32_t>(g), 0});
    queue_.push_back({true, static_cast<std::uint32_t>(g), 0});
    return true;
  }

  bool define(int s, int x, int y) {
    if (pi_[s][x] == y) return true;
    if (pi_[s][x] != -1 || pinv_[s][y] != -1) return false;
    pi_[s][x] = y;
    pinv_[s][y] = x;
    trail_.push_back({false, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(x)});
    queue_.push_back({false, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(x)});
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      Undo ev = queue_.front();
      queue_.pop_front();
      if (ev.is_label) {
        std::size_t g = ev.a;
        int x = c_[g];
        for (int s = 0; s < 2; ++s) {
          std::size_t gs = fwd(s, g);
          if (pi_[s][x] != -1) {
            if (!assign(gs, pi_[s][x])) return false;
          } else if (c_[gs] != -1) {
            if (!define(s, x, c_[gs])) return false;
          }
          std::size_t gi = bwd(s, g);
          if (pinv_[s][x] != -1) {
            if (!assign(gi, pinv_[s][x])) return false;
          } else if (c_[gi] != -1) {
            if (!define(s, c_[gi], x)) return false;
          }
        }
      } else {
        int s = ev.a, x = ev.b, y = pi_[s][x];
        for (std::size_t i = 0; i < members_[x].size(); ++i)
          if (!assign(fwd(s, members_[x][i]), y)) return false;
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    queue_.clear();
    while (trail_.size() > mark) {
      Undo u = trail_.back();
      trail_.pop_back();
      if (u.is_label) {
        members_[c_[u.a]].pop_back();
        c_[u.a] = -1;
      } else {
        int y = pi_[u.a][u.b];
        pi_[u.a][u.b] = -1;
        pinv_[u.a][y] = -1;
      }
    }
  }

  void search() {
    if (++nodes_ > node_budget_)
      throw ResourceError("low-index search exceeded " + std::to_string(node_budget_) +
                          " nodes; best index so far " +
                          (best_ <= cap_ ? std::to_string(best_) : std::string("none")) + " with cap " +
                          std::to_string(cap_));
    int x = -1, s = -1;
    for (int p = 0; p < static_cast<int>(n_) && x < 0; ++p)
      for (int t = 0; t < 2; ++t)
        if (pi_[t][p] == -1) {
          x = p;
          s = t;
          break;
        }
    if (x < 0) {
      if (n_ >= 2 && n_ < best_) {
        best_ = n_;
        witness_.clear();
        for (std::size_t g : members_[0]) witness_.push_back(g);
        std::sort(witness_.begin(), witness_.end());
      }
      return;
    }
    for (int y = 0; y < static_cast<int>(n_) && best_ > 2; ++y) {
      if (pinv_[s][y] != -1) continue;
      std::size_t mark = trail_.size();
      if (define(s, x, y) && propagate()) search();
      undo_to(mark);
    }
    unsigned limit = std::min(cap_, best_ - 1);
    if (n_ < limit && best_ > 2) {
      std::size_t mark = trail_.size();
      int y = static_cast<int>(n_++);
      if (define(s, x, y) && propagate()) search();
      undo_to(mark);
      --n_;
    }
  }

  const FiniteMatrixGroup& G_;
  unsigned cap_;
  std::uint64_t node_budget_, nodes_ = 0;
  std::vector<int> c_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::array<std::vector<int>, 2> pi_, pinv_;
  unsigned n_ = 0, best_ = 0;
  std::vector<Undo> trail_;
  std::deque<Undo> queue_;
  std::vector<std::size_t> witness_;
};

}  // namespace

MinIndexResult min_proper_index(std::uint32_t N, unsigned cap, const MinIndexOptions& opt) {
  if (cap < 2) throw DomainError("index cap must be >= 2");
  if (cap > 1000) throw ResourceError("index cap above 1000");
  FiniteMatrixGroup G(N, opt.budget);
  if (G.size() == 1) return {std::nullopt, {}, cap, 0};
  return LowIndex(G, cap, opt.node_budget).run();
}

// ------------------------------------------------------- normal subgroups

std::vector<NormalSubgroup> normal_subgroups(std::uint32_t N, std::uint64_t budget) {
  auto f = factorize(N);
  if (f.size() != 1 || f[0].first < 5)
    throw DomainError("normal_subgroups needs N = l^e with l >= 5 prime");
  std::uint32_t l = static_cast<std::uint32_t>(f[0].first);
  unsigned e = f[0].second;
  FiniteMatrixGroup G(N, budget);
  // conjugacy class representatives
  std::vector<int> cls(G.size(), -1);
  std::vector<std::size_t> reps;
  for (std::size_t g = 0; g < G.size(); ++g) {
    if (cls[g] != -1) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    std::vector<std::size_t> q{g};
    cls[g] = id;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t s : {G.S(), G.T()}) {
        std::size_t c = G.mul(G.mul(G.inv(s), q[i]), s);
        if (cls[c] == -1) {
          cls[c] = id;
          q.push_back(c);
        }
      }
  }
  std::vector<Subgroup> found;
  auto add = [&](const Subgroup& H) {
    for (const auto& K : found)
      if (K == H) return false;
    found.push_back(H);
    return true;
  };
  for (std::size_t r : reps) add(normal_closure(G, {r}));
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t m = found.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        std::vector<std::size_t> g = found[i].gens;
        g.insert(g.end(), found[j].gens.begin(), found[j].gens.end());
        if (add(generate(G, g))) grew = true;
      }
  }
  // reduction kernels K_f, f = 0..e
  std::vector<NormalSubgroup> out;
  std::uint32_t lf = 1;
  for (unsigned k = 0; k <= e; ++k, lf *= l) {
    std::vector<bool> mem(G.size(), false);
    for (std::size_t g = 0; g < G.size(); ++g) {
      const Mat2N& m = G.element(g);
      bool plus = (m[0] % lf == 1 % lf) && m[1] % lf == 0 && m[2] % lf == 0 && (m[3] % lf == 1 % lf);
      bool minus = ((m[0] + 1) % lf == 0) && m[1] % lf == 0 && m[2] % lf == 0 && ((m[3] + 1) % lf == 0);
      mem[g] = plus || minus;
    }
    for (const auto& H : found)
      if (H.member == mem) out.push_back({H, lf});
  }
  if (out.size() != found.size())
    throw DomainError("found a normal subgroup that is not a reduction kernel");
  std::sort(out.begin(), out.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) { return a.H.order < b.H.order; });
  return out;
}

// -------------------------------------------------------------- Sym^2

namespace {

using V3 = std::array<std::uint32_t, 3>;
using M3 = std::array<std::uint32_t, 9>;

M3 sym2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t l) {
  // f(x, y) -> f(ax + by, cx + dy) on coefficients of x^2, xy, y^2
  return {static_cast<std::uint32_t>(a * a % l),         static_cast<std::uint32_t>(a * c % l),
          static_cast<std::uint32_t>(c * c % l),         static_cast<std::uint32_t>(2 * a * b % l),
          static_cast<std::uint32_t>((a * d + b * c) % l), static_cast<std::uint32_t>(2 * c * d % l),
          static_cast<std::uint32_t>(b * b % l),         static_cast<std::uint32_t>(b * d % l),
          static_cast<std::uint32_t>(d * d % l)};
}

V3 apply3(const M3& m, const V3& v, std::uint64_t l) {
  V3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = static_cast<std::uint32_t>((std::uint64_t(m[3 * i]) * v[0] + std::uint64_t(m[3 * i + 1]) * v[1] +
                                       std::uint64_t(m[3 * i + 2]) * v[2]) % l);
  return r;
}

M3 transpose3(const M3& m) { return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}; }

bool parallel(const V3& u, const V3& v, std::uint64_t l) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if ((std::uint64_t(u[i]) * v[j] + (l - (std::uint64_t(u[j]) * v[i]) % l)) % l != 0) return false;
  return true;
}

}  // namespace

bool sym2_irreducible(std::uint32_t l) {
  if (!is_prime(std::uint64_t(l))) throw DomainError(std::to_string(l) + " is not prime");
  std::vector<M3> gens{sym2(0, l - 1, 1, 0, l), sym2(1, 1, 0, 1, l)};
  std::vector<M3> dual;
  for (const auto& m : gens) dual.push_back(transpose3(m));
  // projective points: first nonzero coordinate 1
  std::vector<V3> pts;
  for (std::uint32_t x = 0; x < l; ++x)
    for (std::uint32_t y = 0; y < l; ++y) pts.push_back({1, x, y});
  for (std::uint32_t y = 0; y < l; ++y) pts.push_back({0, 1, y});
  pts.push_back({0, 0, 1});
  for (const auto& v : pts) {
    bool line = true, plane = true;
    for (const auto& m : gens) line = line && parallel(apply3(m, v, l), v, l);
    for (const auto& m : dual) plane = plane && parallel(apply3(m, v, l), v, l);
    if (line || plane) return false;
  }
  return true;
}

bool ltorsion_in_kernel(std::uint32_t l, unsigned e, std::uint64_t budget) {
  if (!is_prime(std::uint64_t(l)) || e < 1) throw DomainError("needs a prime l and e >= 1");
  std::uint32_t N = 1;
  for (unsigned i = 0; i < e; ++i) N *= l;
  std::uint32_t low = N / l;
  FiniteMatrixGroup G(N, budget);
  auto mulN = [N](const Mat2N& x, const Mat2N& y) {
    return Mat2N{static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[0] + std::uint64_t(x[1]) * y[2]) % N),
                 static_cast<std::uint32_t>((std::uint64_t(x[0]) * y[1] + std::uint64_t(x[1]) * y[3]) % N),
                 static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[0] + std::uint64_t(x[3]) * y[2]) % N),
                 static_cast<std::uint32_t>((std::uint64_t(x[2]) * y[1] + std::uint64_t(x[3]) * y[3]) % N)};
  };
  const Mat2N I{1 % N, 0, 0, 1 % N}, mI{(N - 1) % N, 0, 0, (N - 1) % N};
  auto in_kernel = [&](const Mat2N& m) {
    return m[0] % low == 1 % low && m[1] % low == 0 && m[2] % low == 0 && m[3] % low == 1 % low;
  };
  for (std::size_t g = 0; g < G.size(); ++g) {
    for (int sign = 0; sign < 2; ++sign) {
      Mat2N m = G.element(g);
      if (sign)
        for (auto& x : m) x = (N - x) % N;
      Mat2N p = I;
      for (std::uint32_t k = 0; k < l; ++k) p = mulN(p, m);
      if (p == I && !in_kernel(m)) return false;
    }
  }
  (void)mI;
  return true;
}

// ------------------------------------------------------------ Goursat

std::vector<bool> product_closure(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& gens) {
  std::uint64_t total = std::uint64_t(A.size()) * B.size();
  if (total > 50000000) throw ResourceError("product group larger than 5*10^7 elements");
  std::vector<bool> mem(total, false);
  std::vector<std::pair<std::size_t, std::size_t>> list{{A.identity(), B.identity()}};
  mem[A.identity() * B.size() + B.identity()] = true;
  for (std::size_t q = 0; q < list.size(); ++q)
    for (auto [ga, gb] : gens) {
      std::size_t a = A.mul(list[q].first, ga), b = B.mul(list[q].second, gb);
      std::uint64_t k = std::uint64_t(a) * B.size() + b;
      if (!mem[k]) {
        mem[k] = true;
        list.push_back({a, b});
      }
    }
  return mem;
}

namespace {

// Least element of each coset x K (K normal), by element index.
std::vector<std::size_t> coset_reps(const FiniteMatrixGroup& G, const Subgroup& K) {
  std::vector<std::size_t> rep(G.size(), SIZE_MAX);
  std::vector<std::size_t> kel;
  for (std::size_t k = 0; k < G.size(); ++k)
    if (K.member[k]) kel.push_back(k);
  for (std::size_t g = 0; g < G.size(); ++g) {
    if (rep[g] != SIZE_MAX) continue;
    for (std::size_t k : kel) rep[G.mul(g, k)] = g;
  }
  return rep;
}

}  // namespace

GoursatData goursat_decompose(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B,
                              const std::vector<std::pair<std::size_t, std::size_t>>& gens) {
  auto mem = product_closure(A, B, gens);
  std::vector<bool> pa(A.size(), false), pb(B.size(), false);
  GoursatData out;
  out.H2.member.assign(A.size(), false);
  out.H1.member.assign(B.size(), false);
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b)
      if (mem[std::uint64_t(a) * B.size() + b]) {
        pa[a] = pb[b] = true;
        if (b == B.identity()) out.H2.member[a] = true;
        if (a == A.identity()) out.H1.member[b] = true;
      }
  if (std::count(pa.begin(), pa.end(), true) != static_cast<long>(A.size()))
    throw DomainError("projection of H to the first factor is not surjective");
  if (std::count(pb.begin(), pb.end(), true) != static_cast<long>(B.size()))
    throw DomainError("projection of H to the second factor is not surjective");
  out.H2.order = std::count(out.H2.member.begin(), out.H2.member.end(), true);
  out.H1.order = std::count(out.H1.member.begin(), out.H1.member.end(), true);
  for (std::size_t a = 0; a < A.size(); ++a)
    if (out.H2.member[a]) out.H2.gens.push_back(a);
  for (std::size_t b = 0; b < B.size(); ++b)
    if (out.H1.member[b]) out.H1.gens.push_back(b);
  auto ra = coset_reps(A, out.H2), rb = coset_reps(B, out.H1);
  std::vector<std::size_t> iso(A.size(), SIZE_MAX);
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b)
      if (mem[std::uint64_t(a) * B.size() + b]) {
        std::size_t x = ra[a], y = rb[b];
        if (iso[x] == SIZE_MAX) iso[x] = y;
        else if (iso[x] != y) throw DomainError("internal: H is not a graph of cosets");
      }
  for (std::size_t a = 0; a < A.size(); ++a)
    if (iso[a] != SIZE_MAX) out.iso.push_back({a, iso[a]});
  out.quotient_order = out.iso.size();
  if (A.modulus() == B.modulus() && out.H1.order == 1 && out.H2.order == 1) {
    for (std::size_t x = 0; x < A.size(); ++x) {
      std::size_t xi = A.inv(x);
      if (iso[A.S()] == A.mul(A.mul(x, A.S()), xi) && iso[A.T()] == A.mul(A.mul(x, A.T()), xi))
        out.inner_by.push_back(x);
    }
  }
  return out;
}

std::vector<bool> goursat_reconstruct(const FiniteMatrixGroup& A, const FiniteMatrixGroup& B, const GoursatData& g) {
  auto ra = coset_reps(A, g.H2), rb = coset_reps(B, g.H1);
  std::vector<std::size_t> iso(A.size(), SIZE_MAX);
  for (auto [x, y] : g.iso) iso[x] = y;
  std::vector<bool> mem(std::uint64_t(A.size()) * B.size(), false);
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b) mem[std::uint64_t(a) * B.size() + b] = iso[ra[a]] == rb[b];
  return mem;
}

// ------------------------------------------------- pairwise projections

Lemma43Result lemma43_check(const FiniteMatrixGroup& G, unsigned n, const std::vector<std::vector<std::size_t>>& gens,
                            std::uint64_t budget) {
  if (n < 2) throw DomainError("n must be >= 2");
  for (const auto& g : gens)
    if (g.size() != n) throw ValidationError("every generator must be an n-tuple");
  Lemma43Result r;
  std::uint64_t g2 = std::uint64_t(G.size()) * G.size();
  for (unsigned i = 0; i < n && !r.failing_pair; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      std::vector<std::pair<std::size_t, std::size_t>> pg;
      for (const auto& g : gens) pg.push_back({g[i], g[j]});
      auto mem = product_closure(G, G, pg);
      if (static_cast<std::uint64_t>(std::count(mem.begin(), mem.end(), true)) != g2) {
        r.failing_pair = std::make_pair(i + 1, j + 1);
        break;
      }
    }
  if (r.failing_pair) return r;
  r.pairs_surjective = true;
  long double total = 1;
  for (unsigned k = 0; k < n; ++k) total *= G.size();
  if (total > static_cast<long double>(budget))
    throw ResourceError("|G|^n = " + std::to_string(static_cast<double>(total)) + " exceeds the enumeration budget");
  std::uint64_t tot = static_cast<std::uint64_t>(total);
  std::vector<bool> mem(tot, false);
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::uint64_t k = 0;
    for (unsigned c = n; c-- > 0;) k = k * G.size() + t[c];
    return k;
  };
  std::vector<std::vector<std::size_t>> list{std::vector<std::size_t>(n, G.identity())};
  mem[encode(list[0])] = true;
  for (std::size_t q = 0; q < list.size(); ++q)
    for (const auto& g : gens) {
      std::vector<std::size_t> t(n);
      for (unsigned c = 0; c < n; ++c) t[c] = G.mul(list[q][c], g[c]);
      std::uint64_t k = encode(t);
      if (!mem[k]) {
        mem[k] = true;
        list.push_back(std::move(t));
      }
    }
  r.order = list.size();
  r.equals_full = r.order == tot;
  return r;
}

}  // namespace speciallocus
