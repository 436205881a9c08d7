#include "speciallocus/poly.hpp"

#include <algorithm>
#include <sstream>

#include "speciallocus/arith.hpp"
#include "speciallocus/errors.hpp"

namespace speciallocus {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const ZPoly& f) {
  for (std::size_t k = f.size(); k-- > 0;)
    if (f[k] != 0) return static_cast<long>(k);
  return -1;
}

ZPoly add(const ZPoly& f, const ZPoly& g) {
  ZPoly r(std::max(f.size(), g.size()));
  for (std::size_t k = 0; k < f.size(); ++k) r[k] += f[k];
  for (std::size_t k = 0; k < g.size(); ++k) r[k] += g[k];
  trim(r);
  return r;
}

ZPoly sub(const ZPoly& f, const ZPoly& g) {
  ZPoly r(std::max(f.size(), g.size()));
  for (std::size_t k = 0; k < f.size(); ++k) r[k] += f[k];
  for (std::size_t k = 0; k < g.size(); ++k) r[k] -= g[k];
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& f, const ZPoly& g) {
  if (f.empty() || g.empty()) return {};
  ZPoly r(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), f[i].get_mpz_t(), g[j].get_mpz_t());
  }
  trim(r);
  return r;
}

ZPoly scale(const ZPoly& f, const mpz_class& c) {
  ZPoly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] * c;
  trim(r);
  return r;
}

ZPoly derivative(const ZPoly& f) {
  ZPoly r;
  for (std::size_t k = 1; k < f.size(); ++k) r.push_back(f[k] * static_cast<unsigned long>(k));
  trim(r);
  return r;
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  mpz_class g = content(f);
  if (g == 0) return {};
  ZPoly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] / g;
  if (!r.empty() && r.back() < 0)
    for (auto& c : r) c = -c;
  return r;
}

std::pair<ZPoly, ZPoly> divrem_unit(const ZPoly& f, const ZPoly& g) {
  long dg = degree(g);
  if (dg < 0) throw DomainError("polynomial division by zero");
  const mpz_class& lc = g[dg];
  if (lc != 1 && lc != -1) throw DomainError("divisor must have unit leading coefficient");
  ZPoly r = f;
  trim(r);
  long df = degree(r);
  ZPoly q(df >= dg ? df - dg + 1 : 0);
  for (long k = df; k >= dg; --k) {
    if (r[k] == 0) continue;
    mpz_class t = lc == 1 ? r[k] : mpz_class(-r[k]);
    q[k - dg] = t;
    for (long i = 0; i <= dg; ++i) mpz_submul(r[k - dg + i].get_mpz_t(), t.get_mpz_t(), g[i].get_mpz_t());
  }
  trim(q);
  trim(r);
  return {q, r};
}

namespace {

// pseudo-remainder of f by g
ZPoly prem(ZPoly f, const ZPoly& g) {
  long dg = degree(g);
  const mpz_class& lc = g[dg];
  trim(f);
  while (degree(f) >= dg) {
    long df = degree(f);
    mpz_class t = f[df];
    for (auto& c : f) c *= lc;
    for (long i = 0; i <= dg; ++i) mpz_submul(f[df - dg + i].get_mpz_t(), t.get_mpz_t(), g[i].get_mpz_t());
    trim(f);
  }
  return f;
}

}  // namespace

ZPoly gcd(const ZPoly& f, const ZPoly& g) {
  ZPoly a = primitive_part(f), b = primitive_part(g);
  if (a.empty()) return b;
  if (b.empty()) return a;
  mpz_class c = gcd(content(f), content(g));
  if (degree(a) < degree(b)) std::swap(a, b);
  while (degree(b) > 0) {
    ZPoly r = prem(a, b);
    a = b;
    b = primitive_part(r);
    if (b.empty()) break;
  }
  ZPoly out = b.empty() ? a : ZPoly{1};
  return scale(out, c);
}

std::string to_string(const ZPoly& f, char var) {
  if (degree(f) < 0) return "0";
  std::ostringstream s;
  bool first = true;
  for (long k = degree(f); k >= 0; --k) {
    if (f[k] == 0) continue;
    mpz_class c = f[k];
    if (!first) s << (c < 0 ? " - " : " + ");
    else if (c < 0) s << "-";
    mpz_class a = abs(c);
    if (a != 1 || k == 0) s << a << (k ? "*" : "");
    if (k) s << var << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return s.str();
}

const mpz_class& BiPoly::coeff(std::size_t i, std::size_t j) const {
  static const mpz_class zero = 0;
  if (i >= c_.size() || j >= c_[i].size()) return zero;
  return c_[i][j];
}

void BiPoly::set(std::size_t i, std::size_t j, const mpz_class& v) {
  if (i >= c_.size()) c_.resize(i + 1, std::vector<mpz_class>(c_.empty() ? 1 : c_[0].size()));
  for (auto& row : c_)
    if (row.size() <= j) row.resize(j + 1);
  c_[i][j] = v;
}

void BiPoly::add_to(std::size_t i, std::size_t j, const mpz_class& v) {
  set(i, j, coeff(i, j) + v);
}

long BiPoly::deg_x() const {
  for (std::size_t i = c_.size(); i-- > 0;)
    for (const auto& v : c_[i])
      if (v != 0) return static_cast<long>(i);
  return -1;
}

long BiPoly::deg_y() const {
  long d = -1;
  for (const auto& row : c_)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) d = std::max(d, static_cast<long>(j));
  return d;
}

BiPoly BiPoly::transpose() const {
  BiPoly t;
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j)
      if (c_[i][j] != 0) t.set(j, i, c_[i][j]);
  return t;
}

BiPoly BiPoly::operator-() const {
  BiPoly t = *this;
  for (auto& row : t.c_)
    for (auto& v : row) v = -v;
  return t;
}

bool BiPoly::operator==(const BiPoly& o) const {
  long dx = std::max(deg_x(), o.deg_x()), dy = std::max(deg_y(), o.deg_y());
  for (long i = 0; i <= dx; ++i)
    for (long j = 0; j <= dy; ++j)
      if (coeff(i, j) != o.coeff(i, j)) return false;
  return true;
}

mpz_class BiPoly::content() const {
  mpz_class g = 0;
  for (const auto& row : c_)
    for (const auto& v : row) g = gcd(g, v);
  return g;
}

std::vector<ZPoly> BiPoly::coeffs_in_y() const {
  long dy = deg_y(), dx = deg_x();
  std::vector<ZPoly> out(dy + 1);
  for (long j = 0; j <= dy; ++j) {
    out[j].resize(dx + 1);
    for (long i = 0; i <= dx; ++i) out[j][i] = coeff(i, j);
    speciallocus::trim(out[j]);
  }
  return out;
}

std::vector<ZPoly> BiPoly::coeffs_in_x() const { return transpose().coeffs_in_y(); }

ZPoly BiPoly::diagonal() const {
  ZPoly r;
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j) {
      if (c_[i][j] == 0) continue;
      if (r.size() <= i + j) r.resize(i + j + 1);
      r[i + j] += c_[i][j];
    }
  speciallocus::trim(r);
  return r;
}

std::size_t BiPoly::terms() const {
  std::size_t n = 0;
  for (const auto& row : c_)
    for (const auto& v : row) n += (v != 0);
  return n;
}

std::string BiPoly::to_string() const {
  std::ostringstream s;
  bool first = true;
  for (long i = deg_x(); i >= 0; --i)
    for (long j = deg_y(); j >= 0; --j) {
      const mpz_class& c = coeff(i, j);
      if (c == 0) continue;
      if (!first) s << (c < 0 ? " - " : " + ");
      else if (c < 0) s << "-";
      mpz_class a = abs(c);
      bool mono = i || j;
      if (a != 1 || !mono) s << a << (mono ? "*" : "");
      if (i) s << "x" << (i > 1 ? "^" + std::to_string(i) : "") << (j ? "*" : "");
      if (j) s << "y" << (j > 1 ? "^" + std::to_string(j) : "");
      first = false;
    }
  return first ? "0" : s.str();
}

namespace modp {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const ZPoly& f, std::uint64_t p) {
  Poly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = mpz_mod_u64(f[k], p);
  trim(r);
  return r;
}

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t s = 0;
  for (std::size_t k = f.size(); k-- > 0;) s = add_mod(mul_mod(s, x, p), f[k], p);
  return s;
}

namespace {
// a mod b in place, b nonzero with trimmed leading coefficient
void rem_inplace(Poly& a, const Poly& b, std::uint64_t p) {
  std::size_t db = b.size() - 1;
  std::uint64_t inv = inv_mod(b.back(), p);
  while (a.size() > db) {
    std::uint64_t t = mul_mod(a.back(), inv, p);
    std::size_t off = a.size() - 1 - db;
    if (t)
      for (std::size_t i = 0; i <= db; ++i) a[off + i] = sub_mod(a[off + i], mul_mod(t, b[i], p), p);
    a.pop_back();
    trim(a);
  }
}
}  // namespace

std::uint64_t resultant(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  std::uint64_t res = 1;
  while (true) {
    std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return mul_mod(res, pow_mod(b[0], da, p), p);
    if (da == 0) return mul_mod(res, pow_mod(a[0], db, p), p);
    Poly r = a;
    rem_inplace(r, b, p);
    if (r.empty()) return 0;
    std::size_t dr = r.size() - 1;
    // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
    if ((da & 1) && (db & 1)) res = res ? p - res : 0;
    res = mul_mod(res, pow_mod(b.back(), da - dr, p), p);
    a = std::move(b);
    b = std::move(r);
  }
}

Poly interpolate(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys, std::uint64_t p) {
  std::size_t n = xs.size();
  // Newton divided differences
  std::vector<std::uint64_t> d = ys;
  bool consecutive = true;
  for (std::size_t i = 0; i < n; ++i) consecutive = consecutive && xs[i] == i;
  for (std::size_t k = 1; k < n; ++k) {
    std::uint64_t ik = consecutive ? inv_mod(k % p, p) : 0;
    for (std::size_t i = n - 1; i >= k; --i) {
      std::uint64_t num = sub_mod(d[i], d[i - 1], p);
      std::uint64_t inv = consecutive ? ik : inv_mod(sub_mod(xs[i], xs[i - k], p), p);
      d[i] = mul_mod(num, inv, p);
    }
  }
  Poly r(n, 0);
  // Horner on the Newton form
  for (std::size_t k = n; k-- > 0;) {
    // r = r * (x - xs[k]) + d[k]
    Poly t(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      t[i + 1] = add_mod(t[i + 1], r[i], p);
      t[i] = sub_mod(t[i], mul_mod(r[i], xs[k], p), p);
    }
    t[0] = add_mod(t[0], d[k], p);
    r.swap(t);
  }
  trim(r);
  return r;
}

}  // namespace modp

std::uint64_t crt_prime(std::size_t k) {
  static std::vector<std::uint64_t> primes;
  while (primes.size() <= k) primes.push_back(next_prime(primes.empty() ? (std::uint64_t(1) << 62) : primes.back()));
  return primes[k];
}

void CrtAccumulator::add(const modp::Poly& residues, std::uint64_t p) {
  if (residues.size() > v_.size()) throw DomainError("CRT residue vector longer than accumulator");
  std::uint64_t minv = inv_mod(mpz_mod_u64(mod_, p), p);
  mpz_class t;
  for (std::size_t k = 0; k < v_.size(); ++k) {
    std::uint64_t r = k < residues.size() ? residues[k] : 0;
    std::uint64_t cur = mpz_mod_u64(v_[k], p);
    std::uint64_t s = mul_mod(sub_mod(r, cur, p), minv, p);
    if (s) {
      mpz_class sm;
      mpz_import(sm.get_mpz_t(), 1, -1, sizeof s, 0, 0, &s);
      mpz_addmul(v_[k].get_mpz_t(), sm.get_mpz_t(), mod_.get_mpz_t());
    }
  }
  mpz_class pm;
  mpz_import(pm.get_mpz_t(), 1, -1, sizeof p, 0, 0, &p);
  mod_ *= pm;
}

ZPoly CrtAccumulator::result() const {
  ZPoly r(v_.size());
  mpz_class half = mod_ / 2;
  for (std::size_t k = 0; k < v_.size(); ++k) r[k] = v_[k] > half ? mpz_class(v_[k] - mod_) : v_[k];
  trim(r);
  return r;
}

}  // namespace speciallocus
