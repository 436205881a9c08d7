#include "speciallocus/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"

namespace speciallocus {

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// (g, x, y) with x*a + y*b = g = gcd(a, b)
void egcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& x, mpz_class& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

bool divides(const mpz_class& d, const mpz_class& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

std::uint64_t to_u64(const mpz_class& x) {
  if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64) throw ResourceError("integer too large to factor: " + x.get_str());
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof r, 0, 0, x.get_mpz_t());
  return r;
}

}  // namespace

bool QuadraticForm::operator<(const QuadraticForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

std::string QuadraticForm::to_string() const {
  std::ostringstream s;
  s << "(" << a << "," << b << "," << c << ")";
  return s.str();
}

bool is_discriminant(const mpz_class& D) {
  if (D >= 0) return false;
  unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 4);
  return r == 0 || r == 1;
}

void require_discriminant(const mpz_class& D) {
  if (!is_discriminant(D)) throw ValidationError("invalid discriminant " + D.get_str() + " (need D < 0, D = 0 or 1 mod 4)");
}

std::pair<mpz_class, mpz_class> conductor_decompose(const mpz_class& D) {
  require_discriminant(D);
  mpz_class s = 1, t = -1;
  for (auto [p, e] : factorize(to_u64(-D))) {
    mpz_class pp = p;
    mpz_class sp = pow_ui(pp, e / 2);
    s *= sp;
    if (e % 2) t *= pp;
  }
  // D = s^2 t with t squarefree and negative
  if (mpz_fdiv_ui(t.get_mpz_t(), 4) == 1) return {t, s};
  return {4 * t, s / 2};
}

bool is_fundamental(const mpz_class& D) {
  if (!is_discriminant(D)) return false;
  return conductor_decompose(D).second == 1;
}

ImaginaryQuadraticOrder make_order(const mpz_class& D) {
  auto [dk, f] = conductor_decompose(D);
  return {D, dk, f};
}

bool is_reduced(const QuadraticForm& q) {
  mpz_class ab = abs(q.b);
  if (!(ab <= q.a && q.a <= q.c)) return false;
  if ((ab == q.a || q.a == q.c) && q.b < 0) return false;
  return true;
}

QuadraticForm reduce_form(const QuadraticForm& q) {
  mpz_class D = q.disc();
  if (D >= 0 || q.a <= 0) throw ValidationError("form " + q.to_string() + " is not positive definite");
  QuadraticForm r = q;
  auto normalize = [&]() {
    mpz_class k = floor_div(r.a - r.b, 2 * r.a);
    r.b += 2 * k * r.a;
    r.c = (r.b * r.b - D) / (4 * r.a);
  };
  normalize();
  while (r.a > r.c) {
    std::swap(r.a, r.c);
    r.b = -r.b;
    normalize();
  }
  if (r.a == r.c && r.b < 0) r.b = -r.b;
  return r;
}

QuadraticForm principal_form(const mpz_class& D) {
  require_discriminant(D);
  mpz_class b = mpz_fdiv_ui(D.get_mpz_t(), 4) == 0 ? 0 : 1;
  return {1, b, (b * b - D) / 4};
}

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
  if (f.disc() != g.disc()) throw DomainError("composition of forms with different discriminants");
  const QuadraticForm* p = &f;
  const QuadraticForm* q = &g;
  if (p->a > q->a) std::swap(p, q);
  const mpz_class &a1 = p->a, &b1 = p->b;
  const mpz_class &a2 = q->a, &b2 = q->b, &c2 = q->c;
  mpz_class s = (b1 + b2) / 2;
  mpz_class n = b2 - s;
  mpz_class y1, d, u, v;
  if (divides(a1, a2)) {
    y1 = 0;
    d = a1;
  } else {
    egcd(a2, a1, d, u, v);
    y1 = u;
  }
  mpz_class x2, y2, d1;
  if (divides(d, s)) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    egcd(s, d, d1, u, v);
    x2 = u;
    y2 = -v;
  }
  mpz_class v1 = a1 / d1, v2 = a2 / d1;
  mpz_class r = y1 * y2 * n - x2 * c2;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), v1.get_mpz_t());
  QuadraticForm out;
  out.b = b2 + 2 * v2 * r;
  out.a = v1 * v2;
  out.c = (c2 * d1 + r * (b2 + v2 * r)) / v1;
  return reduce_form(out);
}

QuadraticForm inverse(const QuadraticForm& f) { return reduce_form({f.a, -f.b, f.c}); }

std::vector<QuadraticForm> reduced_forms(const mpz_class& D) {
  require_discriminant(D);
  std::vector<QuadraticForm> out;
  mpz_class amax = sqrt(mpz_class(-D / 3));
  const int par = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
  for (mpz_class a = 1; a <= amax; ++a) {
    mpz_class start = -a;
    if (mpz_odd_p(mpz_class(start - par).get_mpz_t())) ++start;
    for (mpz_class bb = start; bb <= a; bb += 2) {
      mpz_class num = bb * bb - D;
      if (!divides(4 * a, num)) continue;
      mpz_class c = num / (4 * a);
      QuadraticForm q{a, bb, c};
      if (!is_reduced(q)) continue;
      mpz_class g = gcd(gcd(a, bb), c);
      if (g != 1) continue;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t class_number(std::int64_t D) {
  if (!is_discriminant(mpz_class(static_cast<long>(D)))) throw ValidationError("invalid discriminant " + std::to_string(D));
  std::int64_t n = -D;
  std::uint64_t h = 0;
  for (std::int64_t b = n & 1; 3 * b * b <= n; b += 2) {
    std::int64_t m = (b * b + n) / 4;  // = a c
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
      if (m % a) continue;
      std::int64_t c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      // (a, b, c) reduced with b >= 0; (a, -b, c) also reduced unless boundary
      h += (b == 0 || b == a || a == c) ? 1 : 2;
    }
  }
  return h;
}

std::size_t FormClassGroup::index_of(const QuadraticForm& q) const {
  auto it = index_.find(is_reduced(q) ? q : reduce_form(q));
  if (it == index_.end()) throw DomainError("form " + q.to_string() + " not in class group");
  return it->second;
}

std::size_t FormClassGroup::mul(std::size_t i, std::size_t j) const {
  return index_.at(compose(classes_.at(i), classes_.at(j)));
}

std::size_t FormClassGroup::inv(std::size_t i) const { return index_.at(inverse(classes_.at(i))); }

std::uint64_t FormClassGroup::element_order(std::size_t i) const {
  std::uint64_t k = 1;
  std::size_t x = i;
  while (x != identity()) {
    x = mul(x, i);
    ++k;
  }
  return k;
}

std::vector<std::uint64_t> FormClassGroup::structure() const {
  std::uint64_t h = size();
  std::vector<std::uint64_t> orders(h);
  for (std::size_t i = 0; i < h; ++i) orders[i] = element_order(i);
  // exps[p] = exponents of the cyclic p-parts, descending
  std::vector<std::vector<std::uint64_t>> parts;  // per prime: prime powers, descending
  for (auto [p, e] : factorize(h)) {
    std::vector<unsigned> rank;  // rank[k-1] = number of cyclic factors of order >= p^k
    unsigned prev = 0;
    std::uint64_t pk = 1;
    for (unsigned k = 1;; ++k) {
      pk *= p;
      std::uint64_t cnt = 0;
      for (auto o : orders)
        if (pk % o == 0) ++cnt;
      unsigned s = 0;
      while (cnt > 1) {
        cnt /= p;
        ++s;
      }
      if (s == prev) break;
      rank.push_back(s - prev);
      prev = s;
    }
    std::vector<std::uint64_t> pw(rank.empty() ? 0 : rank[0], 1);
    for (unsigned r : rank)
      for (unsigned t = 0; t < r; ++t) pw[t] *= p;
    parts.push_back(pw);
  }
  std::size_t len = 0;
  for (auto& v : parts) len = std::max(len, v.size());
  std::vector<std::uint64_t> inv(len, 1);
  for (auto& v : parts)
    for (std::size_t t = 0; t < v.size(); ++t) inv[t] *= v[t];  // inv[0] largest
  std::reverse(inv.begin(), inv.end());
  return inv;
}

FormClassGroup class_group(const mpz_class& D) {
  require_discriminant(D);
  FormClassGroup G;
  G.order_ = make_order(D);
  std::vector<QuadraticForm> forms = reduced_forms(D);
  QuadraticForm e = principal_form(D);
  G.classes_.push_back(e);
  G.index_[e] = 0;
  for (const QuadraticForm& g : forms) {
    if (G.index_.count(g)) continue;
    // multiply the current subgroup by powers of g until closed
    std::vector<QuadraticForm> base = G.classes_;
    QuadraticForm gp = g;
    while (!G.index_.count(gp)) {
      for (const QuadraticForm& x : base) {
        QuadraticForm y = compose(x, gp);
        if (G.index_.count(y)) throw Error("class group closure inconsistent at " + y.to_string());
        G.index_[y] = G.classes_.size();
        G.classes_.push_back(y);
      }
      gp = compose(gp, g);
    }
  }
  if (G.classes_.size() != forms.size()) {
    throw Error("composition closure has " + std::to_string(G.classes_.size()) + " classes, enumeration " +
                std::to_string(forms.size()));
  }
  // principal first, remaining classes in sorted order
  std::vector<QuadraticForm> sorted = forms;
  std::stable_partition(sorted.begin(), sorted.end(), [&](const QuadraticForm& q) { return q == e; });
  G.classes_ = sorted;
  G.index_.clear();
  for (std::size_t i = 0; i < sorted.size(); ++i) G.index_[sorted[i]] = i;
  return G;
}

bool is_split(const mpz_class& l, const mpz_class& D) {
  if (!is_prime(l)) throw DomainError(l.get_str() + " is not prime");
  require_discriminant(D);
  return kronecker(D, l) == 1;
}

}  // namespace speciallocus
