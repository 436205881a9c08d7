#include "speciallocus/modpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "speciallocus/arith.hpp"
#include "speciallocus/ball.hpp"
#include "speciallocus/cmfield.hpp"
#include "speciallocus/errors.hpp"
#include "speciallocus/quadforms.hpp"

namespace speciallocus {

namespace {

using Series = std::vector<mpz_class>;

Series mul_trunc(const Series& a, const Series& b, std::size_t len) {
  Series r(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return r;
}

// q*j(q) = E4^3 / prod (1 - q^n)^24, to len terms
Series qj_series(std::size_t len) {
  Series s3(len, 0);
  for (std::size_t d = 1; d < len; ++d) {
    mpz_class d3 = mpz_class(static_cast<unsigned long>(d));
    d3 = d3 * d3 * d3;
    for (std::size_t m = d; m < len; m += d) s3[m] += d3;
  }
  Series e4(len);
  e4[0] = 1;
  for (std::size_t n = 1; n < len; ++n) e4[n] = 240 * s3[n];
  Series e43 = mul_trunc(mul_trunc(e4, e4, len), e4, len);
  Series P(len, 0);
  P[0] = 1;
  for (std::size_t k = 1; k * (3 * k - 1) / 2 < len; ++k) {
    int sg = (k % 2) ? -1 : 1;
    P[k * (3 * k - 1) / 2] += sg;
    if (k * (3 * k + 1) / 2 < len) P[k * (3 * k + 1) / 2] += sg;
  }
  Series P2 = mul_trunc(P, P, len), P4 = mul_trunc(P2, P2, len), P8 = mul_trunc(P4, P4, len);
  Series P24 = mul_trunc(mul_trunc(P8, P8, len), P8, len);
  Series inv(len, 0);
  inv[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    mpz_class s = 0;
    for (std::size_t k = 1; k <= n; ++k) mpz_submul(s.get_mpz_t(), P24[k].get_mpz_t(), inv[n - k].get_mpz_t());
    inv[n] = s;
  }
  return mul_trunc(e43, inv, len);
}

// Coefficients of f^e up to degree e, for f with f[0] = 1 (J.C.P. Miller).
Series power_head(const Series& f, unsigned long e) {
  Series g(e + 1);
  g[0] = 1;
  mpz_class acc;
  for (unsigned long t = 1; t <= e; ++t) {
    acc = 0;
    for (unsigned long s = 1; s <= t; ++s) {
      long w = static_cast<long>((e + 1) * s) - static_cast<long>(t);
      if (w == 0 || f[s] == 0) continue;
      mpz_class term = f[s] * g[t - s];
      if (w > 0) mpz_addmul_ui(acc.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(w));
      else mpz_submul_ui(acc.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(-w));
    }
    mpz_divexact_ui(g[t].get_mpz_t(), acc.get_mpz_t(), t);
  }
  return g;
}

std::string phi_cache_name(unsigned m) { return "phi_" + std::to_string(m) + ".txt"; }

std::optional<ModularPolynomial> phi_from_cache(const CacheDir& cache, unsigned m) {
  auto lines = cache.read(phi_cache_name(m));
  if (!lines) return std::nullopt;
  ModularPolynomial phi;
  phi.m = m;
  phi.psi = static_cast<unsigned>(psi(m));
  for (const auto& l : *lines) {
    std::istringstream in(l);
    std::size_t i, j;
    std::string c;
    if (!(in >> i >> j >> c) || i < j) return std::nullopt;
    mpz_class v;
    if (v.set_str(c, 10) != 0) return std::nullopt;
    phi.poly.set(i, j, v);
    phi.poly.set(j, i, v);
  }
  if (!check_modular_poly(phi).empty()) return std::nullopt;
  return phi;
}

void phi_to_cache(const CacheDir& cache, const ModularPolynomial& phi) {
  std::vector<std::string> lines;
  for (long i = 0; i <= phi.poly.deg_x(); ++i)
    for (long j = 0; j <= i; ++j) {
      const mpz_class& c = phi.poly.coeff(i, j);
      if (c != 0) lines.push_back(std::to_string(i) + " " + std::to_string(j) + " " + c.get_str());
    }
  cache.write(phi_cache_name(phi.m), lines);
}

ModularPolynomial build_modular_poly(unsigned m) {
  const unsigned long P = psi(m);
  const unsigned long E = m * P;
  Series f = qj_series(E + 1);
  // head[e][t]: coefficient of q^(t-e) in J^e
  std::vector<Series> head(E + 1);
  for (unsigned long e = 0; e <= E; ++e) head[e] = power_head(f, e);

  struct Pair {
    unsigned long a, d;
    std::vector<std::pair<unsigned long, int>> mob;  // (e, mu(e)) for e | gcd(a, d)
  };
  std::vector<Pair> pairs;
  for (auto a : divisors(m)) {
    Pair pr{a, m / a, {}};
    for (auto e : divisors(std::gcd(a, m / a)))
      if (mobius(e)) pr.mob.push_back({e, mobius(e)});
    pairs.push_back(pr);
  }

  // power sums p_k as polynomials in J
  std::vector<ZPoly> p(P + 1);
  for (unsigned long k = 1; k <= P; ++k) {
    const unsigned long top = k * m;
    Series L(top + 1, 0);  // L[t] is the coefficient of q^(t - top)
    for (const auto& pr : pairs) {
      for (long n = -static_cast<long>(k); n <= 0; ++n) {
        long S = 0;
        for (auto [e, mu] : pr.mob) {
          long de = static_cast<long>(pr.d / e);
          if (n % de == 0) S += mu * de;
        }
        if (S == 0) continue;
        long num = static_cast<long>(pr.a) * n;
        if (num % static_cast<long>(pr.d)) throw PrecisionError("non-integral exponent in Hecke power sum");
        long ex = num / static_cast<long>(pr.d);
        mpz_class c = head[k][n + static_cast<long>(k)] * S;
        L[ex + static_cast<long>(top)] += c;
      }
    }
    ZPoly pk(top + 1);
    for (unsigned long e = top + 1; e-- > 0;) {
      mpz_class alpha = L[top - e];
      if (alpha == 0) continue;
      pk[e] = alpha;
      for (unsigned long t = 0; t <= e; ++t) mpz_submul(L[top - e + t].get_mpz_t(), alpha.get_mpz_t(), head[e][t].get_mpz_t());
    }
    trim(pk);
    p[k] = std::move(pk);
  }

  // Newton: k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i
  std::vector<ZPoly> el(P + 1);
  el[0] = {1};
  for (unsigned long k = 1; k <= P; ++k) {
    ZPoly acc;
    for (unsigned long i = 1; i <= k; ++i) {
      ZPoly t = mul(el[k - i], p[i]);
      acc = (i % 2) ? add(acc, t) : sub(acc, t);
    }
    for (auto& c : acc) {
      if (!mpz_divisible_ui_p(c.get_mpz_t(), k)) throw PrecisionError("Newton identity not integral for Phi_" + std::to_string(m));
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k);
    }
    if (degree(acc) > static_cast<long>(P))
      throw PrecisionError("elementary symmetric function of degree above psi(m) for Phi_" + std::to_string(m));
    el[k] = std::move(acc);
  }

  ModularPolynomial phi;
  phi.m = m;
  phi.psi = static_cast<unsigned>(P);
  phi.poly = BiPoly(P, P);
  for (unsigned long k = 0; k <= P; ++k)
    for (std::size_t j = 0; j < el[k].size(); ++j) {
      if (el[k][j] == 0) continue;
      phi.poly.set(P - k, j, (k % 2) ? mpz_class(-el[k][j]) : el[k][j]);
    }
  return phi;
}

}  // namespace

std::vector<mpz_class> j_coefficients(std::size_t count) { return qj_series(count); }

bool kronecker_congruence(const BiPoly& f, unsigned l) {
  // (x^l - y)(x - y^l) = x^(l+1) - x^l y^l - x y + y^(l+1)
  BiPoly k;
  k.set(l + 1, 0, 1);
  k.set(l, l, -1);
  k.set(1, 1, -1);
  k.set(0, l + 1, 1);
  long dx = std::max<long>(f.deg_x(), l + 1), dy = std::max<long>(f.deg_y(), l + 1);
  for (long i = 0; i <= dx; ++i)
    for (long j = 0; j <= dy; ++j) {
      mpz_class d = f.coeff(i, j) - k.coeff(i, j);
      if (!mpz_divisible_ui_p(d.get_mpz_t(), l)) return false;
    }
  return true;
}

std::string check_modular_poly(const ModularPolynomial& phi) {
  const BiPoly& f = phi.poly;
  long P = phi.psi;
  if (f.deg_x() != P) return "degree in x is " + std::to_string(f.deg_x()) + ", expected " + std::to_string(P);
  if (f.deg_y() != P) return "degree in y is " + std::to_string(f.deg_y()) + ", expected " + std::to_string(P);
  if (f.coeff(P, 0) != 1) return "coefficient of x^psi is not 1";
  for (long j = 1; j <= P; ++j)
    if (f.coeff(P, j) != 0) return "not monic in x";
  if (phi.m > 1 && f != f.transpose()) return "not symmetric";
  if (phi.m > 1 && is_prime(std::uint64_t(phi.m)) && !kronecker_congruence(f, phi.m)) return "Kronecker congruence fails";
  return {};
}

ModularPolynomial modular_poly(unsigned m, const ModPolyOptions& opt) {
  if (m < 1) throw DomainError("level must be >= 1");
  if (m > opt.M_max)
    throw ResourceError("level " + std::to_string(m) + " exceeds M_max = " + std::to_string(opt.M_max));
  if (m == 1) {
    ModularPolynomial phi;
    phi.poly.set(1, 0, 1);
    phi.poly.set(0, 1, -1);
    return phi;
  }
  if (opt.cache) {
    if (auto phi = phi_from_cache(*opt.cache, m)) return *phi;
  }
  ModularPolynomial phi = build_modular_poly(m);
  std::string bad = check_modular_poly(phi);
  if (!bad.empty()) throw PrecisionError("Phi_" + std::to_string(m) + " failed verification: " + bad);
  if (opt.cache) phi_to_cache(*opt.cache, phi);
  return phi;
}

// ------------------------------------------------------------------ roots

namespace {

double log2_mag(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return -1e300;
  return log2_abs(z);
}

Complex polar(double log2r, double angle, mpfr_prec_t w) {
  Complex z(w);
  Real a = Real::from_double(angle, w);
  mpfr_sin_cos(z.im.get(), z.re.get(), a.get(), MPFR_RNDN);
  double ip = std::floor(log2r);
  Real r = Real::from_double(std::exp2(log2r - ip), w);
  mpfr_mul_2si(r.get(), r.get(), static_cast<long>(ip), MPFR_RNDN);
  mpfr_mul(z.re.get(), z.re.get(), r.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), z.im.get(), r.get(), MPFR_RNDN);
  return z;
}

// Initial approximations from the Newton polygon of log|a_k|.
std::vector<Complex> initial_points(const std::vector<Complex>& a, mpfr_prec_t w) {
  std::size_t n = a.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k <= n; ++k) {
    double l = log2_mag(a[k]);
    if (l > -1e299) pts.push_back({double(k), l});
  }
  std::vector<std::pair<double, double>> hull;
  for (auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& p1 = hull[hull.size() - 2];
      auto& p2 = hull.back();
      double cross = (p2.first - p1.first) * (pt.second - p1.second) - (p2.second - p1.second) * (pt.first - p1.first);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  std::vector<Complex> z;
  const double twopi = 2 * M_PI;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    auto [k0, l0] = hull[h];
    auto [k1, l1] = hull[h + 1];
    std::size_t cnt = static_cast<std::size_t>(k1 - k0);
    double lr = (l0 - l1) / (k1 - k0);
    for (std::size_t t = 0; t < cnt; ++t) z.push_back(polar(lr, twopi * t / cnt + twopi * k0 / n + 0.4, w));
  }
  return z;
}

void horner2(const std::vector<Complex>& a, const Complex& z, Complex& p, Complex& dp) {
  mpfr_prec_t w = z.prec();
  p = a.back();
  dp = Complex(w);
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

bool aberth(const std::vector<Complex>& a, std::vector<Complex>& z, mpfr_prec_t w) {
  std::size_t n = z.size();
  std::vector<bool> done(n, false);
  const double tol = -double(w) + 8;
  const std::size_t cap = 200 + 3 * static_cast<std::size_t>(w);
  double best = 1e300;
  std::size_t since_best = 0;
  Complex p(w), dp(w), one = Complex::from_si(1, w);
  for (std::size_t it = 0; it < cap; ++it) {
    bool all = true;
    double worst = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      horner2(a, z[i], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) {
        done[i] = true;
        continue;
      }
      all = false;
      Complex s(w);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d.re.is_zero() && d.im.is_zero()) continue;
        s = s + one / d;
      }
      Complex corr(w);
      if (dp.re.is_zero() && dp.im.is_zero()) {
        corr = p;  // any nudge; the next step sees a nonzero derivative
      } else {
        Complex N = p / dp;
        Complex den = one - N * s;
        corr = (den.re.is_zero() && den.im.is_zero()) ? N : N / den;
      }
      z[i] = z[i] - corr;
      double rel = log2_mag(corr) - std::max(0.0, log2_mag(z[i]));
      if (rel < tol) done[i] = true;
      worst = std::max(worst, rel);
    }
    if (all) return true;
    if (worst < best - 0.5) {
      best = worst;
      since_best = 0;
    } else if (++since_best > 60) {
      return false;  // stalled (clustered roots)
    }
  }
  return false;
}

struct Disk {
  std::size_t idx;
  double log2r;
};

}  // namespace

std::vector<RootCluster> polynomial_roots(const std::vector<Complex>& coeffs, mpfr_prec_t prec) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back().re.is_zero() && c.back().im.is_zero()) c.pop_back();
  if (c.size() < 2) throw DomainError("polynomial of degree < 1 has no roots to isolate");
  std::size_t zeros = 0;
  while (c[zeros].re.is_zero() && c[zeros].im.is_zero()) ++zeros;
  mpfr_prec_t base = std::max<mpfr_prec_t>(2 * prec + 32, coeffs.front().prec());
  for (const auto& x : coeffs) base = std::max(base, x.prec());
  const double thresh = -double(prec) / 2;
  for (int attempt = 0; attempt < 4; ++attempt) {
    mpfr_prec_t w = base << attempt;
    std::vector<Complex> a;
    Complex lead = c.back();
    lead.set_prec(w);
    for (std::size_t k = zeros; k < c.size(); ++k) {
      Complex t = c[k];
      t.set_prec(w);
      a.push_back(t / lead);
    }
    std::size_t n = a.size() - 1;
    std::vector<RootCluster> out;
    if (zeros) out.push_back({Complex(prec), static_cast<unsigned>(zeros)});
    if (n == 0) return out;
    std::vector<Complex> z = initial_points(a, w);
    aberth(a, z, w);
    // Weierstrass inclusion disks of radius n |W_i|
    std::vector<double> lr(n), lz(n);
    Complex p(w), dp(w);
    for (std::size_t i = 0; i < n; ++i) {
      horner2(a, z[i], p, dp);
      // |p(z_i)| plus a bound for the evaluation rounding error
      lz[i] = log2_mag(z[i]);
      double lm = -1e300;
      for (std::size_t k = 0; k <= n; ++k) lm = std::max(lm, log2_mag(a[k]) + double(k) * lz[i]);
      double le = lm + std::log2(double(n + 1)) * 2 - double(w) + 4;
      double lp = log2_mag(p);
      double lw = std::max(lp, le) + 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) lw -= log2_mag(z[i] - z[j]);
      double floor_r = std::max(0.0, lz[i]) - double(w) + 12;
      lr[i] = std::max(lw + std::log2(double(n)) + 0.01, floor_r);
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double ld = log2_mag(z[i] - z[j]);
        double lsum = std::max(lr[i], lr[j]) + 1;  // log2(r_i + r_j) <= max + 1
        if (ld <= lsum) parent[find(i)] = find(j);
      }
    bool ambiguous = false;
    std::vector<std::vector<std::size_t>> comps(n);
    for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);
    for (auto& comp : comps) {
      if (comp.empty()) continue;
      Complex centre(w);
      for (auto i : comp) centre = centre + z[i];
      Real k = Real::from_si(static_cast<long>(comp.size()), w);
      mpfr_div(centre.re.get(), centre.re.get(), k.get(), MPFR_RNDN);
      mpfr_div(centre.im.get(), centre.im.get(), k.get(), MPFR_RNDN);
      if (comp.size() > 1) {
        double diam = -1e300;
        for (auto i : comp) diam = std::max(diam, std::max(log2_mag(z[i] - centre), lr[i]) + 1);
        if (diam - std::max(0.0, log2_mag(centre)) > thresh) {
          ambiguous = true;
          break;
        }
      }
      centre.set_prec(prec);
      out.push_back({std::move(centre), static_cast<unsigned>(comp.size())});
    }
    if (!ambiguous) return out;
  }
  throw PrecisionError("root clusters not separated at the available precision");
}

unsigned long HeckeImage::count() const {
  unsigned long c = 0;
  for (const auto& t : targets) c += t.multiplicity;
  return c;
}

std::vector<Complex> HeckeImage::point(const Target& t) const {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < t.idx.size(); ++i) out.push_back(per_coordinate[i][t.idx[i]].value);
  return out;
}

HeckeImage hecke_image(const std::vector<Complex>& x, unsigned m, mpfr_prec_t prec, const ModPolyOptions& opt) {
  if (x.empty()) throw DomainError("hecke_image needs at least one coordinate");
  ModularPolynomial phi = modular_poly(m, opt);
  HeckeImage img;
  img.source = x;
  img.m = m;
  unsigned long total = 1;
  for (std::size_t c = 0; c < x.size(); ++c) {
    total *= phi.psi;
    if (total > 1000000) throw ResourceError("Hecke image has more than 10^6 points");
  }
  for (const auto& xi : x) {
    double lx = std::max(0.0, log2_mag(xi));
    mpfr_prec_t w = 2 * prec + 32 + static_cast<mpfr_prec_t>(std::ceil(2 * lx)) + 64;
    Complex xw = xi;
    xw.set_prec(w);
    auto cy = phi.poly.coeffs_in_y();
    std::vector<Complex> coeffs;
    for (const auto& zp : cy) {
      Complex s(w);
      for (std::size_t k = zp.size(); k-- > 0;) s = s * xw + mul_mpz(Complex::from_si(1, w), zp[k]);
      coeffs.push_back(s);
    }
    img.per_coordinate.push_back(polynomial_roots(coeffs, prec));
  }
  // product multiset
  std::vector<std::size_t> idx(x.size(), 0);
  while (true) {
    unsigned long mult = 1;
    for (std::size_t c = 0; c < x.size(); ++c) mult *= img.per_coordinate[c][idx[c]].multiplicity;
    img.targets.push_back({idx, mult});
    std::size_t c = 0;
    while (c < x.size() && ++idx[c] == img.per_coordinate[c].size()) idx[c++] = 0;
    if (c == x.size()) break;
  }
  return img;
}

// --------------------------------------------------------------- inclusion

ZPoly resultant_x(const ZPoly& a, const BiPoly& f, long bound_bits, std::size_t* primes_used) {
  long da = degree(a);
  if (da < 0 || (a[da] != 1)) throw DomainError("resultant_x needs a monic first argument");
  long dy = std::max<long>(f.deg_y(), 0);
  std::size_t npts = static_cast<std::size_t>(da * dy + 1);
  auto cx = f.coeffs_in_x();  // cx[i]: Z[y] coefficient of x^i
  CrtAccumulator acc(npts);
  std::vector<std::uint64_t> xs(npts);
  std::iota(xs.begin(), xs.end(), 0);
  std::size_t k = 0;
  while (static_cast<long>(mpz_sizeinbase(acc.modulus().get_mpz_t(), 2)) <= bound_bits + 2) {
    std::uint64_t p = crt_prime(k++);
    modp::Poly ap = modp::reduce(a, p);
    std::vector<modp::Poly> cxp;
    for (const auto& c : cx) cxp.push_back(modp::reduce(c, p));
    std::vector<std::uint64_t> ys(npts);
    modp::Poly g(cx.size());
    for (std::size_t t = 0; t < npts; ++t) {
      for (std::size_t i = 0; i < cx.size(); ++i) g[i] = modp::eval(cxp[i], xs[t], p);
      ys[t] = modp::resultant(ap, g, p);
    }
    acc.add(modp::interpolate(xs, ys, p), p);
  }
  if (primes_used) *primes_used = k;
  return acc.result();
}

namespace {

// log2 of an upper bound for the coefficients of prod_i f(alpha_i, y),
// alpha_i the conjugates of j(tau) for the reduced forms of D.
long resultant_bound_bits(const mpz_class& D, const BiPoly& f) {
  double total = 0;
  for (const auto& q : reduced_forms(D)) {
    CBall j = j_ball(cm_tau_ball(q, 96), 96);
    double la = std::max(0.0, j.abs_upper().log2()) + 1e-6;
    // log2 sum_{i,j} |c_ij| A^i
    double mx = -1e300;
    std::vector<double> terms;
    for (long i = 0; i <= f.deg_x(); ++i)
      for (long jj = 0; jj <= f.deg_y(); ++jj) {
        const mpz_class& c = f.coeff(i, jj);
        if (c == 0) continue;
        long e;
        double m = mpz_get_d_2exp(&e, c.get_mpz_t());
        double t = std::log2(std::fabs(m)) + e + i * la;
        terms.push_back(t);
        mx = std::max(mx, t);
      }
    double s = 0;
    for (double t : terms) s += std::exp2(t - mx);
    total += mx + std::log2(s) + 1e-6;
  }
  return static_cast<long>(std::ceil(total)) + 64;
}

}  // namespace

InclusionResult galois_hecke_inclusion(const mpz_class& D, unsigned l, const ModPolyOptions& opt) {
  require_discriminant(D);
  if (!is_split(l, D))
    throw DomainError(std::to_string(l) + " is not split in the order of discriminant " + D.get_str() +
                      "; the inclusion is only claimed for split primes");
  ModularPolynomial phi = modular_poly(l, opt);
  HilbertOptions ho;
  ho.cache = opt.cache;
  ClassPolynomial H = hilbert_class_poly(D, ho);
  InclusionResult res;
  res.resultant = resultant_x(H.coeffs, phi.poly, resultant_bound_bits(D, phi.poly), &res.primes_used);
  auto [q, r] = divrem_unit(res.resultant, H.coeffs);
  res.holds = !res.resultant.empty() && r.empty();
  if (res.holds) res.quotient = std::move(q);
  return res;
}

// ----------------------------------------------------------- special curves

std::string SpecialVerdict::describe() const {
  switch (kind) {
    case Special:
      return "special(" + std::to_string(m) + ")";
    case NotSpecialWithinBound:
      return "not-special-within-bound";
    case Fiber: {
      std::string s = std::string(fixed_axis == 'x' ? "vertical" : "horizontal") + "-fiber";
      if (point) s += "(" + point->get_str() + ")";
      if (cm_disc) s += " cm D=" + cm_disc->get_str();
      return s;
    }
  }
  return "?";
}

namespace {

ZPoly gcd_all(const std::vector<ZPoly>& polys) {
  ZPoly g;
  for (const auto& p : polys) g = gcd(g, p);
  return g;
}

}  // namespace

SpecialVerdict is_special_plane_curve(const BiPoly& F, const ModPolyOptions& opt, long fiber_disc_bound) {
  if (F.is_zero()) throw ValidationError("the zero polynomial does not define a curve");
  if (F.content() != 1) throw ValidationError("polynomial must have content 1");
  long dx = F.deg_x(), dy = F.deg_y();
  if (dx <= 0 && dy <= 0) throw ValidationError("constant polynomial does not define a curve");
  SpecialVerdict v;
  if (dx <= 0 || dy <= 0) {
    char axis = dy <= 0 ? 'x' : 'y';
    ZPoly u;
    if (axis == 'x')
      for (long i = 0; i <= dx; ++i) u.push_back(F.coeff(i, 0));
    else
      for (long j = 0; j <= dy; ++j) u.push_back(F.coeff(0, j));
    trim(u);
    if (degree(gcd(u, derivative(u))) > 0) throw DomainError("polynomial is reducible (repeated factor); factor first");
    v.kind = SpecialVerdict::Fiber;
    v.fixed_axis = axis;
    if (degree(u) == 1) {
      mpq_class pt(-u[0], u[1]);
      pt.canonicalize();
      v.point = pt;
    }
    if (fiber_disc_bound > 0) {
      ZPoly mon = primitive_part(u);
      for (long a = 3; a <= fiber_disc_bound; ++a) {
        mpz_class D = -a;
        if (!is_discriminant(D)) continue;
        if (static_cast<long>(class_number(-a)) != degree(mon)) continue;
        if (hilbert_class_poly(D).coeffs == mon) {
          v.cm_disc = D;
          break;
        }
      }
    }
    return v;
  }
  if (degree(gcd_all(F.coeffs_in_y())) > 0 || degree(gcd_all(F.coeffs_in_x())) > 0)
    throw DomainError("polynomial is reducible (nontrivial content in one variable); factor first");
  if (dx != dy) return v;
  for (unsigned m = 1; m <= opt.M_max; ++m) {
    if (psi(m) != static_cast<std::uint64_t>(dx)) continue;
    ModularPolynomial phi = modular_poly(m, opt);
    if (F == phi.poly || F == -phi.poly) {
      v.kind = SpecialVerdict::Special;
      v.m = m;
      return v;
    }
  }
  return v;
}

// ------------------------------------------------------------ density probe

namespace {

struct Seed {
  double re, im;
  Complex j;
};

const std::vector<Seed>& seed_table() {
  static const std::vector<Seed> table = [] {
    std::vector<Seed> t;
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; b <= 44; ++b) {
        double re = -0.5 + 0.05 * a, im = 0.85 + 0.05 * b;
        if (re * re + im * im < 0.999) continue;
        Complex tau(Real::from_double(re, 64), Real::from_double(im, 64));
        Complex j(64), dj(64);
        j_and_derivative(tau, 64, j, dj);
        t.push_back({re, im, j});
      }
    return t;
  }();
  return table;
}

bool near(const Complex& a, const Complex& b, double rel_log2) {
  double la = std::max(0.0, log2_mag(a));
  return log2_mag(a - b) <= la + rel_log2;
}

}  // namespace

std::optional<Complex> invert_j(const Complex& w0, mpfr_prec_t prec) {
  Complex w = w0;
  w.set_prec(prec);
  const double tiny = -double(prec) / 2;
  if (log2_mag(w) < tiny + 11) {
    Complex rho(prec);
    mpfr_set_d(rho.re.get(), -0.5, MPFR_RNDN);
    mpfr_set_ui(rho.im.get(), 3, MPFR_RNDN);
    mpfr_sqrt(rho.im.get(), rho.im.get(), MPFR_RNDN);
    mpfr_div_2ui(rho.im.get(), rho.im.get(), 1, MPFR_RNDN);
    return rho;
  }
  if (log2_mag(w - Complex::from_si(1728, prec)) < tiny + 11) {
    Complex i(prec);
    mpfr_set_ui(i.im.get(), 1, MPFR_RNDN);
    return i;
  }
  Complex tau(prec);
  double lw = log2_mag(w);
  if (lw > 30) {
    // j ~ 1/q: tau ~ i log(w) / (2 pi)
    double arg = std::atan2(w.im.to_double(), w.re.to_double());
    double re = -arg / (2 * M_PI);
    double im = lw * std::log(2.0) / (2 * M_PI);
    tau = Complex(Real::from_double(re, prec), Real::from_double(im, prec));
  } else {
    double best = 1e300;
    const Seed* s = nullptr;
    for (const auto& sd : seed_table()) {
      double d = log2_mag(sd.j - w);
      if (d < best) {
        best = d;
        s = &sd;
      }
    }
    tau = Complex(Real::from_double(s->re, prec), Real::from_double(s->im, prec));
  }
  Complex j(prec), dj(prec);
  for (int it = 0; it < 200; ++it) {
    j_and_derivative(tau, prec, j, dj);
    if (dj.re.is_zero() && dj.im.is_zero()) return std::nullopt;
    Complex step = (j - w) / dj;
    tau = tau - step;
    if (mpfr_sgn(tau.im.get()) <= 0) return std::nullopt;
    if (log2_mag(step) < -double(prec) + 24) break;
  }
  tau = to_fundamental_domain(tau);
  j_and_derivative(tau, prec, j, dj);
  if (!near(w, j, -double(prec) / 2)) return std::nullopt;
  return tau;
}

std::string DensityReport::csv() const {
  std::ostringstream s;
  s << "step,points,covered,fraction,outside,skipped\n";
  for (const auto& st : steps)
    s << st.step << ',' << st.points << ',' << st.covered << ',' << st.fraction << ',' << st.outside << ','
      << st.skipped << '\n';
  return s.str();
}

DensityReport orbit_density_probe(const Complex& j0, unsigned m, unsigned steps, const DensityGrid& grid,
                                  mpfr_prec_t prec, const ModPolyOptions& opt) {
  if (m < 2) throw DomainError("density probe needs m >= 2");
  if (grid.cols == 0 || grid.rows == 0 || !(grid.re_max > grid.re_min) || !(grid.im_max > grid.im_min))
    throw DomainError("density grid must be a non-empty rectangle");
  DensityReport rep;
  std::vector<bool> cell(grid.cols * grid.rows, false);
  std::size_t covered = 0, outside = 0, skipped = 0;
  std::vector<Complex> seen;
  const double same = -double(prec) / 2;
  auto place = [&](const Complex& j) {
    auto tau = invert_j(j, prec);
    if (!tau) {
      ++skipped;
      return;
    }
    double re = tau->re.to_double(), im = tau->im.to_double();
    if (re < grid.re_min || re > grid.re_max || im < grid.im_min || im > grid.im_max) {
      ++outside;
      return;
    }
    unsigned c = std::min(grid.cols - 1, unsigned((re - grid.re_min) / (grid.re_max - grid.re_min) * grid.cols));
    unsigned r = std::min(grid.rows - 1, unsigned((im - grid.im_min) / (grid.im_max - grid.im_min) * grid.rows));
    if (!cell[r * grid.cols + c]) {
      cell[r * grid.cols + c] = true;
      ++covered;
    }
  };
  auto record = [&](unsigned s) {
    rep.steps.push_back({s, seen.size(), covered, double(covered) / double(cell.size()), outside, skipped});
  };
  Complex start = j0;
  start.set_prec(prec);
  seen.push_back(start);
  place(start);
  record(0);
  std::vector<Complex> frontier{start};
  for (unsigned s = 1; s <= steps; ++s) {
    std::vector<Complex> next;
    for (const auto& x : frontier) {
      HeckeImage img = hecke_image({x}, m, prec, opt);
      for (const auto& rc : img.per_coordinate[0]) {
        bool dup = false;
        for (const auto& y : seen)
          if (near(y, rc.value, same)) {
            dup = true;
            break;
          }
        if (dup) continue;
        seen.push_back(rc.value);
        next.push_back(rc.value);
        place(rc.value);
      }
    }
    frontier = std::move(next);
    record(s);
  }
  return rep;
}

}  // namespace speciallocus
