#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "speciallocus/cmfield.hpp"
#include "speciallocus/errors.hpp"

using namespace speciallocus;

namespace {

Complex tau_of(double re, double im, mpfr_prec_t p) {
  return Complex(Real::from_double(re, p), Real::from_double(im, p));
}

double dist(const Complex& a, const Complex& b) { return abs_d(a - b); }

// Evaluate an integer polynomial (ascending coefficients) at a complex point.
Complex eval(const std::vector<mpz_class>& c, const Complex& x) {
  Complex s = Complex::from_si(0, x.prec());
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + mul_mpz(Complex::from_si(1, x.prec()), c[k]);
  return s;
}

}  // namespace

TEST(CMField, TauFormula) {
  Complex t = cm_tau({1, 0, 1}, 128);
  EXPECT_TRUE(t.re.is_zero());
  EXPECT_DOUBLE_EQ(t.im.to_double(), 1.0);
  Complex r = cm_tau({1, 1, 1}, 128);
  EXPECT_DOUBLE_EQ(r.re.to_double(), -0.5);
  EXPECT_NEAR(r.im.to_double(), std::sqrt(3.0) / 2, 1e-15);
  Complex u = cm_tau({2, 1, 3}, 128);
  EXPECT_DOUBLE_EQ(u.re.to_double(), -0.25);
  EXPECT_NEAR(u.im.to_double(), std::sqrt(23.0) / 4, 1e-15);
}

TEST(CMField, ClassicalValues) {
  for (mpfr_prec_t p : {64, 128, 256}) {
    Complex j = j_invariant(tau_of(0, 1, p), p);
    EXPECT_LT(dist(j, Complex::from_si(1728, p)), 1e-12);
    Complex j2 = j_invariant(tau_of(0, 2, p), p);
    EXPECT_LT(dist(j2, Complex::from_si(287496, p)), 1e-9);
  }
  Complex rho = cm_tau({1, 1, 1}, 200);
  EXPECT_LT(abs_d(j_invariant(rho, 128)), 1e-30);
  // j(sqrt(-2)) = 8000
  Complex s2 = cm_tau({1, 0, 2}, 200);
  EXPECT_LT(dist(j_invariant(s2, 128), Complex::from_si(8000, 128)), 1e-25);
}

TEST(CMField, ConvergesAsPrecisionGrows) {
  Complex t = tau_of(0.123, 0.987, 512);
  Complex a = j_invariant(t, 128);
  Complex b = j_invariant(t, 400);
  EXPECT_LT(log2_abs(a - b), -100);
}

TEST(CMField, ModularInvariance) {
  Complex t = tau_of(0.31, 0.45, 300);
  Complex j1 = j_invariant(t, 200);
  // tau -> -1/tau and tau -> tau + 1
  Complex mt = Complex::from_si(-1, 300) / t;
  Complex t1 = t + Complex::from_si(1, 300);
  EXPECT_LT(log2_abs(j1 - j_invariant(mt, 200)) - log2_abs(j1), -150);
  EXPECT_LT(log2_abs(j1 - j_invariant(t1, 200)) - log2_abs(j1), -150);
}

TEST(CMField, BallContainsTruth) {
  // j(i) = 1728 exactly; a low-precision ball must contain it
  CBall t = cm_tau_ball({1, 0, 1}, 80);
  CBall j = j_ball(t, 80);
  auto n = j.certified_integer();
  ASSERT_TRUE(n.has_value());
  EXPECT_EQ(*n, 1728);
}

TEST(CMField, PrecisionTooSmall) { EXPECT_THROW(j_invariant(tau_of(0, 1, 64), 32), PrecisionError); }

TEST(CMField, DerivativeMatchesDifferenceQuotient) {
  mpfr_prec_t p = 256;
  Complex t = tau_of(0.2, 1.1, p);
  Complex j, dj;
  j_and_derivative(t, p, j, dj);
  Complex h(p);
  mpfr_set_d(h.re.get(), 1e-20, MPFR_RNDN);
  Complex jp = j_invariant(t + h, p), jm = j_invariant(t - h, p);
  Complex two_h = h + h;
  Complex fd = (jp - jm) / two_h;
  EXPECT_LT(log2_abs(fd - dj) - log2_abs(dj), -40);
}

TEST(CMField, HilbertSmall) {
  auto h3 = hilbert_class_poly(-3);
  EXPECT_EQ(h3.coeffs, (std::vector<mpz_class>{0, 1}));
  auto h4 = hilbert_class_poly(-4);
  EXPECT_EQ(h4.coeffs, (std::vector<mpz_class>{-1728, 1}));
  auto h23 = hilbert_class_poly(-23);
  ASSERT_EQ(h23.degree(), 3u);
  EXPECT_EQ(h23.coeffs[3], 1);
  // known: x^3 + 3491750 x^2 - 5151296875 x + 12771880859375
  EXPECT_EQ(h23.coeffs[2], mpz_class("3491750"));
  EXPECT_EQ(h23.coeffs[1], mpz_class("-5151296875"));
  EXPECT_EQ(h23.coeffs[0], mpz_class("12771880859375"));
  auto h15 = hilbert_class_poly(-15);
  EXPECT_EQ(h15.coeffs, (std::vector<mpz_class>{mpz_class("-121287375"), mpz_class("191025"), 1}));
}

TEST(CMField, HilbertDegreeStabilityAndRoots) {
  for (long D : {-20L, -56L, -71L, -103L, -199L, -260L, -391L, -551L, -1015L}) {
    auto G = class_group(D);
    auto H = hilbert_class_poly(D);
    EXPECT_EQ(H.degree(), G.size()) << D;
    EXPECT_LE(H.attempts, 2) << D;
    HilbertOptions dbl;
    dbl.bits_scale = 2.0;
    EXPECT_EQ(hilbert_class_poly(D, dbl).coeffs, H.coeffs) << D;
    // numeric roots are the orbit j-values
    auto orbit = galois_orbit(D, H.bits + 64);
    for (const auto& pt : orbit.points) {
      Complex v = eval(H.coeffs, pt.j_value);
      // rounding error of Horner is bounded by sum |c_k| |x|^k 2^-prec
      double lx = log2_abs(pt.j_value), scale = -1e9;
      for (std::size_t k = 0; k < H.coeffs.size(); ++k) {
        if (H.coeffs[k] == 0) continue;
        scale = std::max(scale, double(mpz_sizeinbase(H.coeffs[k].get_mpz_t(), 2)) + k * lx);
      }
      EXPECT_LT(log2_abs(v), scale + 24 - double(H.bits + 64)) << D;
    }
  }
}

TEST(CMField, HilbertCacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "sl_hd_cache_test";
  std::filesystem::remove_all(dir);
  CacheDir cache(dir);
  HilbertOptions opt;
  opt.cache = &cache;
  auto a = hilbert_class_poly(-23, opt);
  EXPECT_TRUE(std::filesystem::exists(dir / "hd_23.txt"));
  auto lines = cache.read("hd_23.txt");
  ASSERT_TRUE(lines.has_value());
  EXPECT_EQ((*lines)[0], "1");
  EXPECT_EQ((*lines)[3], "12771880859375");
  auto b = hilbert_class_poly(-23, opt);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(b.attempts, 0);
  std::filesystem::remove_all(dir);
}

TEST(CMField, GaloisOrbitAction) {
  EXPECT_EQ(galois_orbit(-4).points.size(), 1u);
  EXPECT_EQ(galois_orbit(-47).points.size(), 5u);
  auto o = galois_orbit(-23);
  ASSERT_EQ(o.points.size(), 3u);
  const auto& G = o.group;
  for (std::size_t p = 0; p < 3; ++p) {
    EXPECT_EQ(o.act(G.identity(), p), p);
    for (std::size_t c1 = 0; c1 < 3; ++c1)
      for (std::size_t c2 = 0; c2 < 3; ++c2) EXPECT_EQ(o.act(c1, o.act(c2, p)), o.act(G.mul(c1, c2), p));
  }
  // the orbit is a torsor: the action of classes on a point is free and transitive
  auto o2 = galois_orbit(-260);
  for (std::size_t p = 0; p < o2.points.size(); ++p) {
    std::vector<bool> hit(o2.points.size());
    for (std::size_t c = 0; c < o2.points.size(); ++c) hit[o2.act(c, p)] = true;
    for (bool b : hit) EXPECT_TRUE(b);
  }
}

TEST(CMField, BrauerSiegel) {
  EXPECT_DOUBLE_EQ(brauer_siegel_ratio(-7).to_double(), 0.0);
  EXPECT_NEAR(brauer_siegel_ratio(-23).to_double(), 2 * std::log(3.0) / std::log(23.0), 1e-15);
  EXPECT_NEAR(brauer_siegel_ratio(-23).to_double(), 0.7007, 1e-4);
  EXPECT_NEAR(brauer_siegel_ratio(-47).to_double(), 0.8360, 1e-4);
  EXPECT_THROW(brauer_siegel_ratio(-4), DomainError);
}
