#include "speciallocus/cmfield.hpp"

#include <cmath>

#include "speciallocus/errors.hpp"

namespace speciallocus {

namespace {

struct Mat2 {
  mpz_class a = 1, b = 0, c = 0, d = 1;
};

// gamma in SL2(Z) with gamma(tau) in the fundamental domain, found on the
// midpoint.  The caller applies gamma in ball arithmetic.
Mat2 reduction_matrix(const Complex& tau0) {
  mpfr_prec_t p = tau0.prec();
  Complex z = tau0;
  Mat2 g;
  Real n2(p), one_minus(p);
  mpfr_set_ui_2exp(one_minus.get(), 1, -20, MPFR_RNDN);
  mpfr_ui_sub(one_minus.get(), 1, one_minus.get(), MPFR_RNDN);
  for (int it = 0; it < 100000; ++it) {
    mpz_class n;
    Real t(p);
    mpfr_round(t.get(), z.re.get());
    mpfr_get_z(n.get_mpz_t(), t.get(), MPFR_RNDN);
    if (n != 0) {
      mpfr_sub_z(z.re.get(), z.re.get(), n.get_mpz_t(), MPFR_RNDN);
      g = {g.a - n * g.c, g.b - n * g.d, g.c, g.d};
    }
    mpfr_fmma(n2.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
    if (mpfr_cmp(n2.get(), one_minus.get()) >= 0) return g;
    // z -> -1/z
    mpfr_div(z.re.get(), z.re.get(), n2.get(), MPFR_RNDN);
    mpfr_neg(z.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_div(z.im.get(), z.im.get(), n2.get(), MPFR_RNDN);
    g = {-g.c, -g.d, g.a, g.b};
  }
  throw PrecisionError("reduction to the fundamental domain did not terminate");
}

CBall apply(const Mat2& g, const CBall& tau) {
  if (g.c == 0) {
    CBall r = tau + CBall::from_mpz(g.b * g.d, tau.prec());  // a = d = +-1
    return r;
  }
  mpfr_prec_t p = tau.prec();
  CBall num = mul_mpz(tau, g.a) + CBall::from_mpz(g.b, p);
  CBall den = mul_mpz(tau, g.c) + CBall::from_mpz(g.d, p);
  return num / den;
}

Mag mag_ratio(unsigned long a, unsigned long b) {
  Mag m;
  mpfr_set_ui(m.get(), a, MPFR_RNDU);
  mpfr_div_ui(m.get(), m.get(), b, MPFR_RNDU);
  return m;
}

Mag one_minus_lower(const Mag& r) {
  Mag l;
  mpfr_ui_sub(l.get(), 1, r.get(), MPFR_RNDD);
  if (mpfr_sgn(l.get()) <= 0) throw PrecisionError("q-series ratio bound not below 1");
  return l;
}

CBall horner(const std::vector<mpz_class>& c, const CBall& q, mpfr_prec_t p) {
  CBall s = CBall::from_mpz(c.back(), p);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    s = s * q;
    if (c[k] != 0) s = s + CBall::from_mpz(c[k], p);
  }
  return s;
}

struct Eisenstein {
  CBall q, E4, E6, P;
};

// E4, E6 and the Euler product prod (1 - q^n) at q = exp(2 pi i tau), for tau
// in the fundamental domain.  E4 and P carry certified tails.
Eisenstein series_at(const CBall& tau, mpfr_prec_t p, bool want_e6) {
  Eisenstein out{exp_2pi_i(tau), CBall(p), CBall(p), CBall(p)};
  Mag x = out.q.abs_upper();
  if (!(x < Mag::pow2(-1))) throw PrecisionError("|q| too large for the q-expansion (tau not reduced?)");
  double lx = x.log2();
  long target = static_cast<long>(p) + 10;
  unsigned long N = 1;
  while ((N + 1) * lx + 3 * std::log2(double(N + 1)) + 10.0 > -double(target)) {
    if (++N > 200000) throw PrecisionError("q-expansion truncation too long");
  }
  std::vector<mpz_class> s3(N + 1, 0), s5(want_e6 ? N + 1 : 0, 0);
  for (unsigned long d = 1; d <= N; ++d) {
    mpz_class d3 = mpz_class(d) * d * d;
    mpz_class d5 = d3 * d * d;
    for (unsigned long m = d; m <= N; m += d) {
      s3[m] += d3;
      if (want_e6) s5[m] += d5;
    }
  }
  std::vector<mpz_class> c4(N + 1), c6;
  c4[0] = 1;
  for (unsigned long n = 1; n <= N; ++n) c4[n] = 240 * s3[n];
  out.E4 = horner(c4, out.q, p);
  // sigma_3(n) <= zeta(3) n^3 < 1.21 n^3; the term ratio beyond N is at most rho
  Mag rho = mag_ratio(N + 2, N + 1).pow_ui(3) * x;
  Mag tail4 = Mag::from_double(240 * 1.21) * mag_ratio(N + 1, 1).pow_ui(3) * x.pow_ui(N + 1);
  out.E4.add_error(tail4.div_lower(one_minus_lower(rho)));
  if (want_e6) {
    c6.assign(N + 1, 0);
    c6[0] = 1;
    for (unsigned long n = 1; n <= N; ++n) c6[n] = -504 * s5[n];
    out.E6 = horner(c6, out.q, p);
  }
  // pentagonal number theorem
  std::vector<mpz_class> cp(N + 1, 0);
  cp[0] = 1;
  for (unsigned long k = 1; k * (3 * k - 1) / 2 <= N; ++k) {
    int sg = (k % 2) ? -1 : 1;
    cp[k * (3 * k - 1) / 2] += sg;
    if (k * (3 * k + 1) / 2 <= N) cp[k * (3 * k + 1) / 2] += sg;
  }
  out.P = horner(cp, out.q, p);
  out.P.add_error(x.pow_ui(N + 1).div_lower(one_minus_lower(x)));
  return out;
}

CBall pow24(const CBall& P) {
  CBall p2 = P * P, p4 = p2 * p2, p8 = p4 * p4, p16 = p8 * p8;
  return p16 * p8;
}

}  // namespace

CBall cm_tau_ball(const QuadraticForm& q, mpfr_prec_t prec) {
  if (q.a <= 0 || q.disc() >= 0) throw ValidationError("form " + q.to_string() + " is not positive definite");
  mpz_class D = q.disc();
  Real re(prec), im(prec);
  mpq_class x(-q.b, 2 * q.a);
  x.canonicalize();
  mpfr_set_q(re.get(), x.get_mpq_t(), MPFR_RNDN);
  mpz_class absD = -D;
  mpfr_set_z(im.get(), absD.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(im.get(), im.get(), MPFR_RNDN);
  mpfr_div_z(im.get(), im.get(), mpz_class(2 * q.a).get_mpz_t(), MPFR_RNDN);
  Mag rad = Mag::pow2(re.exponent() - static_cast<long>(prec) + 1) + Mag::pow2(im.exponent() - static_cast<long>(prec) + 2);
  if (re.is_zero()) rad = Mag::pow2(im.exponent() - static_cast<long>(prec) + 2);
  return CBall(std::move(re), std::move(im), rad);
}

Complex cm_tau(const QuadraticForm& q, mpfr_prec_t prec) { return cm_tau_ball(q, prec).mid(); }

CBall j_ball(const CBall& tau, mpfr_prec_t prec) {
  if (mpfr_sgn(tau.im().get()) <= 0) throw DomainError("tau must lie in the upper half plane");
  Mat2 g = reduction_matrix(tau.mid());
  CBall tr = apply(g, tau);
  Eisenstein e = series_at(tr, prec, false);
  CBall E4 = e.E4;
  CBall delta = e.q * pow24(e.P);
  return E4 * E4 * E4 / delta;
}

Complex j_invariant(const Complex& tau, mpfr_prec_t precision) {
  if (precision < 64) throw PrecisionError("precision below 64 bits cannot bound the q-expansion truncation");
  mpfr_prec_t p = precision + 32;
  Mag want = Mag::pow2(16 - static_cast<long>(precision));
  for (int attempt = 0; attempt < 6; ++attempt) {
    CBall t = CBall::from_complex(tau, std::max(p, tau.prec()));
    t = CBall(Real(t.re()), Real(t.im()), Mag::zero());  // input taken as exact
    CBall j = j_ball(t, p);
    if (j.rad() <= want) {
      Complex out = j.mid();
      out.set_prec(precision);
      return out;
    }
    double excess = j.rad().log2() - want.log2();
    p += static_cast<mpfr_prec_t>(std::ceil(excess)) + 32;
  }
  throw PrecisionError("j(tau) error bound not reached after raising precision");
}

Complex to_fundamental_domain(const Complex& tau) {
  if (mpfr_sgn(tau.im.get()) <= 0) throw DomainError("tau must lie in the upper half plane");
  Mat2 g = reduction_matrix(tau);
  Complex num = mul_mpz(tau, g.a), den = mul_mpz(tau, g.c);
  Complex b = Complex::from_si(0, tau.prec()), d = Complex::from_si(0, tau.prec());
  mpfr_set_z(b.re.get(), g.b.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(d.re.get(), g.d.get_mpz_t(), MPFR_RNDN);
  return (num + b) / (den + d);
}

void j_and_derivative(const Complex& tau, mpfr_prec_t prec, Complex& j, Complex& dj) {
  CBall t = CBall::from_complex(tau, prec);
  Mat2 g = reduction_matrix(t.mid());
  CBall tr = apply(g, t);
  Eisenstein e = series_at(tr, prec, true);
  CBall delta = e.q * pow24(e.P);
  CBall E4sq = e.E4 * e.E4;
  CBall jb = E4sq * e.E4 / delta;
  // dj/dtau' = -2 pi i E4^2 E6 / Delta
  CBall d = E4sq * e.E6 / delta;
  Real twopi(prec);
  mpfr_const_pi(twopi.get(), MPFR_RNDN);
  mpfr_mul_2ui(twopi.get(), twopi.get(), 1, MPFR_RNDN);
  Complex dm = d.mid();
  Complex dd(prec);
  // -2 pi i (u + iv) = 2 pi v - 2 pi u i
  mpfr_mul(dd.re.get(), twopi.get(), dm.im.get(), MPFR_RNDN);
  mpfr_mul(dd.im.get(), twopi.get(), dm.re.get(), MPFR_RNDN);
  mpfr_neg(dd.im.get(), dd.im.get(), MPFR_RNDN);
  // chain rule through tau' = gamma tau: dtau'/dtau = 1/(c tau + d)^2
  Complex ctd = mul_mpz(tau, g.c);
  Complex dC = Complex::from_si(0, prec);
  mpfr_set_z(dC.re.get(), g.d.get_mpz_t(), MPFR_RNDN);
  ctd = ctd + dC;
  dj = dd / (ctd * ctd);
  j = jb.mid();
}

long hilbert_initial_bits(const mpz_class& D) {
  double s = 0;
  for (const auto& f : reduced_forms(D)) s += 1.0 / f.a.get_d();
  double absD = -D.get_d();
  return static_cast<long>(std::ceil(M_PI * std::sqrt(absD) * s / std::log(2.0))) + 64;
}

namespace {

std::optional<ClassPolynomial> hilbert_from_cache(const CacheDir& cache, const mpz_class& D, std::size_t h) {
  mpz_class a = -D;
  auto lines = cache.read("hd_" + a.get_str() + ".txt");
  if (!lines || lines->size() != h + 1) return std::nullopt;
  ClassPolynomial cp;
  cp.D = D;
  cp.coeffs.resize(h + 1);
  for (std::size_t i = 0; i <= h; ++i) {
    if (cp.coeffs[h - i].set_str((*lines)[i], 10) != 0) return std::nullopt;
  }
  if (cp.coeffs[h] != 1) return std::nullopt;
  return cp;
}

}  // namespace

ClassPolynomial hilbert_class_poly(const mpz_class& D, const HilbertOptions& opt) {
  std::vector<QuadraticForm> forms = reduced_forms(D);
  if (opt.cache) {
    if (auto cp = hilbert_from_cache(*opt.cache, D, forms.size())) return *cp;
  }
  long bits = static_cast<long>(std::ceil(hilbert_initial_bits(D) * opt.bits_scale));
  for (int attempt = 1; attempt <= opt.max_retries + 1; ++attempt, bits *= 2) {
    mpfr_prec_t p = bits;
    std::vector<CBall> poly{CBall::from_si(1, p)};
    bool ok = true;
    try {
      for (const auto& f : forms) {
        CBall r = j_ball(cm_tau_ball(f, p + 16), p);
        std::vector<CBall> next(poly.size() + 1, CBall::from_si(0, p));
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k + 1] = next[k + 1] + poly[k];
          next[k] = next[k] - poly[k] * r;
        }
        poly = std::move(next);
      }
    } catch (const PrecisionError&) {
      ok = false;
    }
    ClassPolynomial cp;
    cp.D = D;
    for (std::size_t k = 0; ok && k < poly.size(); ++k) {
      auto n = poly[k].certified_integer();
      if (!n) {
        ok = false;
        break;
      }
      cp.coeffs.push_back(*n);
    }
    if (!ok) continue;
    cp.attempts = attempt;
    cp.bits = bits;
    if (opt.cache) {
      std::vector<std::string> lines;
      for (std::size_t k = cp.coeffs.size(); k-- > 0;) lines.push_back(cp.coeffs[k].get_str());
      opt.cache->write("hd_" + mpz_class(-D).get_str() + ".txt", lines);
    }
    return cp;
  }
  throw ResourceError("class polynomial for D=" + D.get_str() + " not certified after " +
                      std::to_string(opt.max_retries) + " precision increases");
}

GaloisOrbit galois_orbit(const mpz_class& D, mpfr_prec_t prec) {
  GaloisOrbit o{class_group(D), {}};
  for (const auto& f : o.group.classes()) {
    Complex tau = cm_tau(f, prec + 16);
    Complex j = j_invariant(tau, prec);
    tau.set_prec(prec);
    o.points.push_back({o.group.order(), f, std::move(tau), std::move(j)});
  }
  return o;
}

Real brauer_siegel_ratio(const mpz_class& D, mpfr_prec_t prec) {
  require_discriminant(D);
  if (-D < 7) throw DomainError("Brauer-Siegel ratio needs |D| >= 7");
  std::size_t h = reduced_forms(D).size();
  Real lh(prec), ld(prec), r(prec);
  mpfr_set_ui(lh.get(), h, MPFR_RNDN);
  mpfr_log(lh.get(), lh.get(), MPFR_RNDN);
  mpz_class a = -D;
  mpfr_set_z(ld.get(), a.get_mpz_t(), MPFR_RNDN);
  mpfr_log(ld.get(), ld.get(), MPFR_RNDN);
  mpfr_div(r.get(), lh.get(), ld.get(), MPFR_RNDN);
  mpfr_mul_2ui(r.get(), r.get(), 1, MPFR_RNDN);
  return r;
}

}  // namespace speciallocus
