// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "speciallocus/arith.hpp"
#include "speciallocus/chowdeg.hpp"
#include "speciallocus/cmfield.hpp"
#include "speciallocus/descent.hpp"
#include "speciallocus/errors.hpp"
#include "speciallocus/lattices.hpp"
#include "speciallocus/modpoly.hpp"
#include "speciallocus/quadforms.hpp"
#include "speciallocus/sl2mod.hpp"
#include "support/class_number_oracle.hpp"
#include "support/lattice_oracle.hpp"

using namespace speciallocus;

namespace {

// pinned limits
constexpr double kClassGroupSeconds = 60;
constexpr double kModPolySeconds = 120;
constexpr double kNumericLog2Tol = -100;  // log2 of |Phi| / sum |c_ij x^i y^j|
constexpr int kRandomTau = 20;
constexpr std::size_t kMinSplitPairs = 100;
constexpr double kLemma71Seconds = 300;
constexpr double kLatticeSeconds = 30;
constexpr int kLatticeTriples = 200;
constexpr double kGroupSeconds = 120;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool valid_disc(long D) { return D < 0 && ((-D) % 4 == 0 || (-D) % 4 == 3); }

// 1. composition class group vs reduced-triple enumeration
Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t n = 0;
  for (long D = -3; D >= -10000; --D) {
    if (!valid_disc(D)) continue;
    ++n;
    std::uint64_t h = class_group(D).size();
    if (h != oracle::class_number(D)) return {false, "mismatch at D=" + std::to_string(D)};
  }
  double s = seconds_since(t0);
  return {s < kClassGroupSeconds, std::to_string(n) + " discriminants agree in " + fmt("%.1f s", s)};
}

// 2. class polynomial certification
Outcome criterion2() {
  std::vector<long> discs;
  for (long D = -3; D >= -3000; --D)
    if (valid_disc(D)) discs.push_back(D);
  std::vector<long> pick;
  for (int k = 0; k < 50; ++k) pick.push_back(discs[k * (discs.size() - 1) / 49]);
  int worst = 0;
  for (long D : pick) {
    ClassPolynomial P = hilbert_class_poly(D);
    if (P.coeffs.size() != oracle::class_number(D) + 1 || P.coeffs.back() != 1)
      return {false, "degree mismatch at D=" + std::to_string(D)};
    if (P.attempts > 2) return {false, "D=" + std::to_string(D) + " needed " + std::to_string(P.attempts) + " attempts"};
    worst = std::max(worst, P.attempts);
    HilbertOptions dbl;
    dbl.bits_scale = 2.0;
    if (hilbert_class_poly(D, dbl).coeffs != P.coeffs) return {false, "doubling precision changed D=" + std::to_string(D)};
  }
  return {true, "50 discriminants from -3 to " + std::to_string(pick.back()) + ", at most " + std::to_string(worst) +
                    " attempt(s)"};
}

// (x^l - y)(x - y^l) mod l, coefficientwise
bool kronecker_direct(const BiPoly& f, unsigned l) {
  BiPoly k;
  k.set(l + 1, 0, 1);
  k.set(0, l + 1, 1);
  k.set(l, l, -1);
  k.set(1, 1, -1);
  long dx = std::max(f.deg_x(), k.deg_x()), dy = std::max(f.deg_y(), k.deg_y());
  for (long i = 0; i <= dx; ++i)
    for (long j = 0; j <= dy; ++j) {
      mpz_class a = (i <= f.deg_x() && j <= f.deg_y()) ? f.coeff(i, j) : mpz_class(0);
      mpz_class b = (i <= k.deg_x() && j <= k.deg_y()) ? k.coeff(i, j) : mpz_class(0);
      if ((a - b) % l != 0) return false;
    }
  return true;
}

// 3. modular polynomial invariants and numeric vanishing
Outcome criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  const mpfr_prec_t prec = 256;
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 1.6);
  double worst = -1e9;
  for (unsigned l : {2u, 3u, 5u, 7u}) {
    const BiPoly& F = modular_poly(l).poly;
    if (!(F == F.transpose())) return {false, "Phi_" + std::to_string(l) + " not symmetric"};
    if (F.deg_x() != long(l + 1) || F.deg_y() != long(l + 1) || F.coeff(l + 1, 0) != 1)
      return {false, "Phi_" + std::to_string(l) + " has the wrong degree"};
    if (!kronecker_direct(F, l)) return {false, "Kronecker congruence fails for l=" + std::to_string(l)};
    for (int t = 0; t < kRandomTau; ++t) {
      Complex tau(Real::from_double(re(rng), prec), Real::from_double(im(rng), prec));
      Complex ltau = tau;
      mpfr_mul_ui(ltau.re.get(), ltau.re.get(), l, MPFR_RNDN);
      mpfr_mul_ui(ltau.im.get(), ltau.im.get(), l, MPFR_RNDN);
      Complex x = j_invariant(tau, prec), y = j_invariant(ltau, prec);
      // Horner in y of Horner in x, tracking the magnitude sum
      Complex val = Complex::from_si(0, prec);
      double lx = std::log2(std::max(abs_d(x), 1e-300)), ly = std::log2(std::max(abs_d(y), 1e-300));
      double scale = -1e9;
      for (long j = F.deg_y(); j >= 0; --j) {
        Complex row = Complex::from_si(0, prec);
        for (long i = F.deg_x(); i >= 0; --i) {
          row = row * x;
          const mpz_class& c = F.coeff(i, j);
          if (c != 0) {
            row = row + mul_mpz(Complex::from_si(1, prec), c);
            scale = std::max(scale, std::log2(std::fabs(c.get_d())) + i * lx + j * ly);
          }
        }
        val = val * y + row;
      }
      double r = (val.re.is_zero() && val.im.is_zero()) ? -1e9 : log2_abs(val) - scale;
      worst = std::max(worst, r);
    }
  }
  double s = seconds_since(t0);
  bool ok = worst < kNumericLog2Tol && s < kModPolySeconds;
  return {ok, "l=2,3,5,7 invariants hold; worst log2 relative residual " + fmt("%.1f", worst) + " over " +
                  std::to_string(4 * kRandomTau) + " tau; " + fmt("%.1f s", s)};
}

// 4. exact inclusion for split pairs
Outcome criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t pairs = 0;
  for (long D = -3; D >= -2000; --D) {
    if (!valid_disc(D)) continue;
    for (unsigned l : {2u, 3u, 5u, 7u}) {
      if (!is_split(mpz_class(l), mpz_class(D))) continue;
      if (!galois_hecke_inclusion(D, l).holds)
        return {false, "inclusion fails at D=" + std::to_string(D) + ", l=" + std::to_string(l)};
      ++pairs;
    }
  }
  return {pairs >= kMinSplitPairs, std::to_string(pairs) + " split pairs, all divisible; " +
                                       fmt("%.1f s", seconds_since(t0))};
}

bool is_prime_small(unsigned long x) {
  if (x < 2) return false;
  for (unsigned long d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

// 5. intersection identity
Outcome criterion5() {
  std::mt19937_64 rng(5);
  std::vector<unsigned long> primes;
  for (unsigned long p = 2; p <= 97; ++p)
    if (is_prime_small(p)) primes.push_back(p);
  for (int t = 0; t < 500; ++t) {
    unsigned long d1 = 1 + rng() % 50, d2 = 1 + rng() % 50, l = primes[rng() % primes.size()];
    MultiClass Z = MultiClass::epsilon(2, 1).scaled(d1) + MultiClass::epsilon(2, 2).scaled(d2);
    mpz_class got = intersection_number(Z, hecke_pushforward(Z, l));
    mpz_class want = mpz_class(2) * d1 * d2 * (l + 1) * (l + 1);
    if (got != want)
      return {false, "d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) + " l=" + std::to_string(l)};
  }
  return {true, "500 random (d1, d2, l) with d_i <= 50, l <= 97"};
}

// 6. split prime versus class number scan
Outcome criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  Lemma71Hit hit = lemma71_scan(1, 1, 1000000);
  long D = hit.D.get_si();
  std::uint64_t h = oracle::class_number(D);
  bool split = true;
  // l splits iff D is a square mod 4l, nonzero mod l
  bool found = false;
  for (long x = 0; x < 4 * long(hit.l) && !found; ++x) {
    long r = ((x * x - D) % (4 * long(hit.l)) + 4 * long(hit.l)) % (4 * long(hit.l));
    found = r == 0;
  }
  split = found && D % long(hit.l) != 0;
  bool ok = hit.l > 3 && split && 2 * (hit.l + 1) * (hit.l + 1) < h && h == hit.h && is_fundamental(hit.D) &&
            lemma71_verify(1, 1, hit.D, hit.D, hit.l);
  double s = seconds_since(t0);
  return {ok && s < kLemma71Seconds, "D=" + std::to_string(D) + " l=" + std::to_string(hit.l) + " h=" +
                                         std::to_string(h) + "; " + fmt("%.1f s", s)};
}

// 7. descent ledger soundness
Outcome criterion7() {
  std::string detail;
  for (auto [n, d] : {std::pair{3u, 2u}, std::pair{4u, 3u}}) {
    std::size_t digits = 0;
    for (int A0 = 1; A0 <= 5; ++A0) {
      DescentLedger first = descent_simulate(n, d, A0, 1000);
      mpz_class mx = first.minimal_sufficient_mx;
      DescentLedger L = descent_simulate(n, d, A0, mx);
      std::string tag = "(" + std::to_string(n) + "," + std::to_string(d) + ") A0=" + std::to_string(A0);
      if (!L.inclusion_forced() || *L.forced_at > d - 1) return {false, tag + ": not forced at the reported m_x"};
      if (descent_simulate(n, d, A0, mx - 1).inclusion_forced()) return {false, tag + ": m_x - 1 already suffices"};
      for (const DescentLedger* led : {&first, &L})
        for (const auto& st : led->steps)
          if (st.A > descent_closed_form_bound(n, d, A0, led->m_x, st.i))
            return {false, tag + ": A_" + std::to_string(st.i) + " exceeds the closed form"};
      digits = std::max(digits, mx.get_str().size());
    }
    detail += "(" + std::to_string(n) + "," + std::to_string(d) + ") m_x up to " + std::to_string(digits) + " digits; ";
  }
  return {true, detail + "A_i within the closed form"};
}

// 8. tree centre identities against the BFS median
Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8);
  const std::vector<oracle::I> primes{2, 3, 5};
  auto from = [](const oracle::Mat& m) { return canonicalize(qmat(m[0], m[1], m[2], m[3])); };
  for (int t = 0; t < kLatticeTriples; ++t) {
    auto tr = oracle::random_triple(rng, primes, 3);
    std::array<LatticeClass, 3> L{from(tr.G[0]), from(tr.G[1]), from(tr.G[2])};
    TripleCenter c = center_of_three(L[0], L[1], L[2]);
    std::array<mpz_class, 3> n{c.n1, c.n2, c.n3};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (relative_position(L[i], L[j]) != n[i] * n[j]) return {false, "n_ij != n_i n_j at triple " + std::to_string(t)};
    oracle::Key root = oracle::canon(tr.L0);
    for (auto p : primes) {
      auto med = oracle::tree_median(root, 3, p, tr.local.at(p));
      for (int i = 0; i < 3; ++i)
        if (valuation(n[i], p) != unsigned(med.dist[i])) return {false, "median distance differs at triple " + std::to_string(t)};
      if (tree_distance(c.C, from(oracle::as_mat(med.m)), p) != 0)
        return {false, "median vertex differs at triple " + std::to_string(t)};
    }
  }
  double s = seconds_since(t0);
  return {s < kLatticeSeconds, std::to_string(kLatticeTriples) + " triples over p=2,3,5 depth 3; " + fmt("%.1f s", s)};
}

// 9. group facts
Outcome criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  auto r5 = min_proper_index(5, 10);
  auto r11 = min_proper_index(11, 12);
  auto r13 = min_proper_index(13, 13);
  auto n25 = normal_subgroups(25);
  bool sym = !sym2_irreducible(2);
  for (std::uint32_t l : {3u, 5u, 7u, 11u, 13u}) sym = sym && sym2_irreducible(l);
  bool ok = r5.index == 5u && r11.index == 11u && r11.witness.order == 60 && !r13.index && n25.size() == 3 && sym;
  double s = seconds_since(t0);
  return {ok && s < kGroupSeconds, "minindex(5,10)=" + (r5.index ? std::to_string(*r5.index) : "none") +
                                       ", minindex(11,12)=" + (r11.index ? std::to_string(*r11.index) : "none") +
                                       " witness " + std::to_string(r11.witness.order) + ", minindex(13,13)=" +
                                       (r13.index ? std::to_string(*r13.index) : "none") + ", |normal(25)|=" +
                                       std::to_string(n25.size()) + ", sym2 " + (sym ? "ok" : "wrong") + "; " +
                                       fmt("%.2f s", s)};
}

// 10. density probe
Outcome criterion10() {
  DensityReport R = orbit_density_probe(Complex::from_si(0, 128), 2, 6);
  std::string seq;
  bool ok = R.steps.size() == 7;
  for (std::size_t k = 0; k < R.steps.size(); ++k) {
    seq += (k ? "," : "") + std::to_string(R.steps[k].covered);
    if (k > 0 && R.steps[k].fraction < R.steps[k - 1].fraction) ok = false;
    if (k > 2 && R.steps[k].covered <= R.steps[k - 1].covered) ok = false;
  }
  return {ok, "covered cells per step " + seq};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
