#include "speciallocus/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "speciallocus/arith.hpp"
#include "speciallocus/cache.hpp"
#include "speciallocus/chowdeg.hpp"
#include "speciallocus/cmfield.hpp"
#include "speciallocus/descent.hpp"
#include "speciallocus/errors.hpp"
#include "speciallocus/lattices.hpp"
#include "speciallocus/modpoly.hpp"
#include "speciallocus/quadforms.hpp"
#include "speciallocus/sl2mod.hpp"

namespace speciallocus {

using Json = nlohmann::ordered_json;

void Config::validate() const {
  if (precision_bits < 64) throw DomainError("precision_bits must be >= 64");
  if (M_max < 1) throw DomainError("M_max must be positive");
  if (search_cap < 1) throw DomainError("search_cap must be positive");
  if (enumeration_budget < 1) throw DomainError("enumeration_budget must be positive");
  if (cache_dir.empty()) throw DomainError("cache_dir must not be empty");
}

Config default_config() {
  Config c;
  if (const char* env = std::getenv("SPECIALLOCUS_CACHE"); env && *env) c.cache_dir = env;
  return c;
}

namespace {

// ---------------------------------------------------------------- parsing

mpz_class parse_int(const std::string& s) {
  mpz_class v;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  bool ok = !t.empty() && v.set_str(t, 10) == 0;
  if (!ok) throw DomainError("not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, std::uint64_t lo = 0) {
  mpz_class v = parse_int(s);
  if (v < lo || !v.fits_ulong_p()) throw DomainError("expected an integer >= " + std::to_string(lo) + ": '" + s + "'");
  return v.get_ui();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Complex parse_complex(const std::string& s, mpfr_prec_t prec) {
  auto parts = split(s, ',');
  if (parts.empty() || parts.size() > 2) throw DomainError("complex number must be 're' or 're,im': '" + s + "'");
  Complex z(prec);
  z.re = Real::from_string(parts[0], prec);
  z.im = parts.size() == 2 ? Real::from_string(parts[1], prec) : Real(prec);
  return z;
}

// "a,b,c,d" row-major, rational entries allowed
QMat2 parse_basis(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw DomainError("basis must be 'a,b,c,d': '" + s + "'");
  QMat2 m;
  for (int i = 0; i < 4; ++i) {
    mpq_class q;
    if (parts[i].empty() || q.set_str(parts[i], 10) != 0) throw DomainError("bad matrix entry '" + parts[i] + "'");
    q.canonicalize();
    m[i] = q;
  }
  return m;
}

Json parse_json(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed JSON argument: ") + e.what());
  }
}

MultiClass parse_class(const std::string& s) {
  Json j = parse_json(s);
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
    throw DomainError("class JSON needs an unsigned \"n\"");
  MultiClass z(j["n"].get<unsigned>());
  for (const auto& t : j.value("terms", Json::array())) {
    std::vector<unsigned> idx;
    for (const auto& i : t.at("I")) {
      if (!i.is_number_unsigned()) throw DomainError("subset indices must be positive integers");
      idx.push_back(i.get<unsigned>());
    }
    const auto& a = t.at("a");
    mpz_class v = a.is_string() ? parse_int(a.get<std::string>()) : parse_int(a.dump());
    z.set(subset_of(idx), z.coeff(subset_of(idx)) + v);
  }
  return z;
}

// ---------------------------------------------------------------- output

Json to_json(const mpz_class& v) { return v.get_str(); }

Json to_json(const MultiClass& z) {
  Json terms = Json::array();
  for (const auto& [I, a] : z.terms()) {
    Json idx = Json::array();
    for (unsigned i : subset_indices(I)) idx.push_back(i);
    terms.push_back({{"I", idx}, {"a", a.get_str()}});
  }
  return {{"n", z.n()}, {"terms", terms}};
}

Json to_json(const QuadraticForm& q) { return Json::array({q.a.get_str(), q.b.get_str(), q.c.get_str()}); }

Json to_json(const Complex& z, int digits) {
  return Json::array({z.re.to_string(digits), z.im.to_string(digits)});
}

Json to_json(const LatticeClass& L) { return L.to_string(); }

Json matrix_json(const std::vector<std::vector<mpz_class>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.fits_slong_p() ? Json(v.get_si()) : Json(v.get_str()));
    out.push_back(r);
  }
  return out;
}

int digits_for(const Config& c) { return static_cast<int>(std::min<long>(60, c.precision_bits * 3 / 10)); }

void need(const std::vector<std::string>& a, std::size_t lo, std::size_t hi, const std::string& usage) {
  if (a.size() < lo || a.size() > hi) throw CLI::ValidationError("usage: " + usage);
}

// ---------------------------------------------------------------- commands

struct Ctx {
  const Config& cfg;
  std::ostream& out;
  CacheDir cache;
  ModPolyOptions mp() const {
    ModPolyOptions o;
    o.M_max = cfg.M_max;
    o.cache = &cache;
    return o;
  }
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(cfg.precision_bits); }
  void emit(const Json& j) const { out << j.dump() << '\n'; }
};

void cmd_classgroup(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 1, 1, "classgroup <D>");
  mpz_class D = parse_int(a[0]);
  FormClassGroup G = class_group(D);
  Json forms = Json::array();
  for (const auto& q : G.classes()) forms.push_back(Json::array({q.a.get_si(), q.b.get_si(), q.c.get_si()}));
  if (!D.fits_slong_p()) {
    forms = Json::array();
    for (const auto& q : G.classes()) forms.push_back(to_json(q));
  }
  c.emit({{"D", D.get_str()}, {"h", G.size()}, {"forms", forms}, {"structure", G.structure()}});
}

void cmd_split(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 2, "split <l> <D>");
  c.emit({{"split", is_split(parse_int(a[0]), parse_int(a[1]))}});
}

void cmd_hilbert(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 1, 1, "hilbert <D>");
  mpz_class D = parse_int(a[0]);
  require_discriminant(D);
  mpz_class absD = abs(D);
  std::string name = "hd_" + absD.get_str() + ".txt";
  std::vector<std::string> desc;
  if (auto lines = c.cache.read(name)) {
    for (const auto& l : *lines) desc.push_back(parse_int(l).get_str());
    if (desc.size() != class_number(D.get_si()) + 1) desc.clear();  // stale or foreign file
  }
  if (desc.empty()) {
    ClassPolynomial P = hilbert_class_poly(D);
    for (std::size_t k = P.coeffs.size(); k-- > 0;) desc.push_back(P.coeffs[k].get_str());
    c.cache.write(name, desc);
  }
  c.emit({{"D", D.get_str()}, {"degree", desc.size() - 1}, {"coeffs", desc}});
}

void cmd_orbit(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 1, 1, "orbit <D>");
  mpz_class D = parse_int(a[0]);
  GaloisOrbit O = galois_orbit(D, c.prec());
  int dg = digits_for(c.cfg);
  Json pts = Json::array();
  for (const auto& p : O.points)
    pts.push_back({{"form", to_json(p.form)}, {"tau", to_json(p.tau, dg)}, {"j", to_json(p.j_value, dg)}});
  Json bs = nullptr;
  if (abs(D) >= 7) bs = brauer_siegel_ratio(D, c.prec()).to_string(12);
  c.emit({{"D", D.get_str()}, {"h", O.group.size()}, {"points", pts}, {"brauer_siegel", bs}});
}

void cmd_modpoly(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 1, 1, "modpoly <m>");
  unsigned m = static_cast<unsigned>(parse_u64(a[0], 1));
  ModularPolynomial P = modular_poly(m, c.mp());
  std::string problem = check_modular_poly(P);
  Json terms = Json::array();
  for (long i = 0; i <= P.poly.deg_x(); ++i)
    for (long j = 0; j <= i; ++j) {
      const mpz_class& v = P.poly.coeff(i, j);
      if (v != 0) terms.push_back(Json::array({i, j, v.get_str()}));
    }
  c.emit({{"m", m}, {"psi", P.psi}, {"symmetric", true}, {"terms", terms}, {"check", problem.empty() ? "ok" : problem}});
}

void cmd_hecke(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 64, "hecke <m> <j...>");
  unsigned m = static_cast<unsigned>(parse_u64(a[0], 1));
  std::vector<Complex> x;
  for (std::size_t i = 1; i < a.size(); ++i) x.push_back(parse_complex(a[i], c.prec()));
  HeckeImage H = hecke_image(x, m, c.prec(), c.mp());
  int dg = std::min(digits_for(c.cfg), 25);
  Json targets = Json::array();
  for (const auto& t : H.targets) {
    Json pt = Json::array();
    for (const auto& z : H.point(t)) pt.push_back(to_json(z, dg));
    targets.push_back({{"multiplicity", t.multiplicity}, {"point", pt}});
  }
  c.emit({{"m", m}, {"count", H.count()}, {"targets", targets}});
}

void cmd_inclusion(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 2, "inclusion <D> <l>");
  mpz_class D = parse_int(a[0]);
  unsigned l = static_cast<unsigned>(parse_u64(a[1], 2));
  InclusionResult r = galois_hecke_inclusion(D, l, c.mp());
  c.emit({{"D", D.get_str()},
          {"l", l},
          {"split", is_split(mpz_class(l), D)},
          {"holds", r.holds},
          {"resultant_degree", degree(r.resultant)},
          {"quotient_degree", r.holds ? degree(r.quotient) : -1},
          {"primes_used", r.primes_used}});
}

void cmd_density(const Ctx& c, const std::vector<std::string>& a, const std::string& j0s) {
  need(a, 2, 2, "density <m> <steps> [--j0 re,im]");
  unsigned m = static_cast<unsigned>(parse_u64(a[0], 2));
  unsigned steps = static_cast<unsigned>(parse_u64(a[1], 0));
  Complex j0 = parse_complex(j0s, 128);
  DensityReport R = orbit_density_probe(j0, m, steps, DensityGrid{}, 128, c.mp());
  c.out << "step,points,covered,fraction,outside,skipped\n";
  for (const auto& s : R.steps) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.4f", s.fraction);
    c.out << s.step << ',' << s.points << ',' << s.covered << ',' << frac << ',' << s.outside << ',' << s.skipped
          << '\n';
  }
}

void cmd_chow(const Ctx& c, const std::string& sub, const std::vector<std::string>& a) {
  if (sub == "mul") {
    need(a, 2, 2, "chow mul <class> <class>");
    c.emit(to_json(chow_mul(parse_class(a[0]), parse_class(a[1]))));
  } else if (sub == "degree") {
    need(a, 1, 1, "chow degree <class>");
    MultiClass z = parse_class(a[0]);
    auto dim = z.dimension();
    c.emit({{"dimension", dim ? Json(*dim) : Json(nullptr)}, {"degree", very_ample_degree(z).get_str()}});
  } else if (sub == "push") {
    need(a, 2, 2, "chow push <class> <l>");
    c.emit(to_json(hecke_pushforward(parse_class(a[0]), parse_u64(a[1], 2))));
  } else if (sub == "bound") {
    need(a, 2, 2, "chow bound <class> <l>");
    c.emit(to_json(hypersurface_bound(parse_class(a[0]), parse_u64(a[1], 2))));
  } else if (sub == "minimal") {
    // dims: 2^n comma-separated integers indexed by subset bitmask
    if (a.size() < 2) throw CLI::ValidationError("usage: chow minimal <n> <d_0,d_1,...>");
    unsigned n = static_cast<unsigned>(parse_u64(a[0], 1));
    if (n > 20) throw DomainError("n must be <= 20");
    std::vector<std::string> vals;
    for (std::size_t i = 1; i < a.size(); ++i)
      for (auto& v : split(a[i], ',')) {
        std::erase_if(v, [](char ch) { return ch == '[' || ch == ']' || ch == ' '; });
        if (!v.empty()) vals.push_back(v);
      }
    if (vals.size() != (std::size_t(1) << n)) throw DomainError("dims must list 2^n integers");
    std::map<Subset, long> m;
    for (Subset s = 0; s < (Subset(1) << n); ++s) m[s] = parse_int(vals[s]).get_si();
    Json out = Json::array();
    for (Subset s : minimal_subsets(DimensionProfile(n, m))) out.push_back(subset_indices(s));
    c.emit({{"n", n}, {"minimal", out}});
  } else {
    throw CLI::ValidationError("unknown chow subcommand");
  }
}

void cmd_chebotarev(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 2, "chebotarev <nM> <dM>");
  ChebotarevThreshold t = chebotarev_threshold(parse_u64(a[0], 1), parse_int(a[1]));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t.x_min);
  c.emit({{"n_M", t.n_M}, {"d_M", parse_int(a[1]).get_str()}, {"x_min", buf}});
}

void cmd_splitprime(const Ctx& c, const std::vector<std::string>& a, std::uint64_t lmin) {
  need(a, 1, 1024, "splitprime <D...> --min <l>");
  std::vector<mpz_class> D;
  for (const auto& s : a) D.push_back(parse_int(s));
  SplitPrimeResult r = split_prime_search(D, lmin, c.cfg.search_cap);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.log_bound);
  c.emit({{"l", r.l}, {"min", lmin}, {"log_bound", buf}, {"within_bound", r.within_bound}});
}

void cmd_lemma71(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 4, 4, "lemma71 <d1> <d2> <D1> <D2>");
  std::uint64_t d1 = parse_u64(a[0], 1), d2 = parse_u64(a[1], 1);
  mpz_class D1 = parse_int(a[2]), D2 = parse_int(a[3]);
  std::uint64_t cap = std::min<std::uint64_t>(c.cfg.search_cap, 1000000);
  Lemma71Result r = lemma71_feasible(d1, d2, D1, D2, cap);
  Json j = {{"d1", d1}, {"d2", d2}, {"D1", D1.get_str()}, {"D2", D2.get_str()}, {"h1", r.h1}, {"h2", r.h2}};
  j["l"] = r.l ? Json(*r.l) : Json(nullptr);
  j["verified"] = r.l ? lemma71_verify(d1, d2, D1, D2, *r.l) : false;
  j["binding"] = r.binding;
  j["summary"] = r.describe();
  c.emit(j);
}

void cmd_descent(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 4, 4, "descent <n> <d> <A0> <mx>");
  unsigned n = static_cast<unsigned>(parse_u64(a[0], 1)), d = static_cast<unsigned>(parse_u64(a[1], 1));
  DescentLedger L = descent_simulate(n, d, parse_int(a[2]), parse_int(a[3]));
  Json steps = Json::array();
  for (const auto& s : L.steps)
    steps.push_back({{"i", s.i},
                     {"dim", s.dim},
                     {"A", to_json(s.A)},
                     {"l", to_json(s.l)},
                     {"c", to_json(s.c)},
                     {"B", to_json(s.B)},
                     {"orbit", to_json(s.orbit)},
                     {"closed_form_bound", to_json(descent_closed_form_bound(n, d, L.A0, L.m_x, s.i))}});
  c.emit({{"n", n},
          {"d", d},
          {"A0", to_json(L.A0)},
          {"m_x", to_json(L.m_x)},
          {"steps", steps},
          {"inclusion_forced", L.inclusion_forced()},
          {"forced_at", L.forced_at ? Json(*L.forced_at) : Json(nullptr)},
          {"minimal_sufficient_mx", to_json(L.minimal_sufficient_mx)}});
}

void cmd_lattice(const Ctx& c, const std::string& sub, const std::vector<std::string>& a) {
  if (sub == "pos") {
    need(a, 2, 2, "lattice pos <a,b,c,d> <a,b,c,d>");
    LatticeClass L1 = canonicalize(parse_basis(a[0])), L2 = canonicalize(parse_basis(a[1]));
    mpz_class n = relative_position(L1, L2);
    Json j = {{"L1", to_json(L1)}, {"L2", to_json(L2)}, {"relative_position", to_json(n)}};
    auto f = n.fits_ulong_p() && n > 1 ? factorize(n.get_ui()) : Factorization{};
    if (f.size() == 1) j["distance"] = {{"p", f[0].first}, {"edges", f[0].second}};
    c.emit(j);
  } else if (sub == "center") {
    need(a, 3, 3, "lattice center <b1> <b2> <b3>");
    std::vector<LatticeClass> L;
    for (const auto& s : a) L.push_back(canonicalize(parse_basis(s)));
    TripleCenter t = center_of_three(L[0], L[1], L[2]);
    std::vector<std::vector<mpz_class>> pair(3, std::vector<mpz_class>(3, 1));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) pair[i][j] = relative_position(L[i], L[j]);
    c.emit({{"center", to_json(t.C)},
            {"n", Json::array({to_json(t.n1), to_json(t.n2), to_json(t.n3)})},
            {"pairwise", matrix_json(pair)}});
  } else {
    throw CLI::ValidationError("unknown lattice subcommand");
  }
}

void cmd_label(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 20, "label <n1> <n2> ...");
  std::vector<std::uint64_t> lab;
  for (const auto& s : a) lab.push_back(parse_u64(s, 1));
  Json j = {{"label", lab}, {"pairwise", matrix_json(label_pairwise(lab))}};
  j["multidegree"] = to_json(label_multidegree(lab));
  j["tuple_count"] = label_tuple_count(lab).get_str();
  c.emit(j);
}

void cmd_counting(const Ctx& c, const std::vector<std::string>& a) {
  need(a, 2, 1024, "counting <r> <m> [n...]");
  std::uint64_t r = parse_u64(a[0], 1), m = parse_u64(a[1], 1);
  std::vector<std::uint64_t> ns;
  for (std::size_t i = 2; i < a.size(); ++i) ns.push_back(parse_u64(a[i], 1));
  CountingReport R = counting_report(ns, r, m);
  Json rows = Json::array();
  for (const auto& row : R.rows)
    rows.push_back({{"n", row.n}, {"psi", row.psi}, {"phi", row.phi}, {"pi", row.pi}, {"psi_ok", row.psi_ok},
                    {"phi_ok", row.phi_ok}});
  c.emit({{"r", r}, {"m", m}, {"rows", rows}, {"cutoff", R.cutoff}, {"psi_small_count", R.psi_small.size()},
          {"largest", R.largest}});
}

void cmd_group(const Ctx& c, const std::string& sub, const std::vector<std::string>& a) {
  std::uint64_t budget = c.cfg.enumeration_budget;
  if (sub == "order") {
    need(a, 1, 1, "group order <N>");
    std::uint64_t N = parse_u64(a[0], 2);
    if (N > 2000000) throw DomainError("N too large");
    c.emit({{"N", N}, {"order", group_order(static_cast<std::uint32_t>(N))}});
  } else if (sub == "minindex") {
    need(a, 2, 2, "group minindex <N> <cap>");
    MinIndexOptions opt;
    opt.budget = budget;
    auto N = static_cast<std::uint32_t>(parse_u64(a[0], 2));
    auto cap = static_cast<unsigned>(parse_u64(a[1], 2));
    MinIndexResult r = min_proper_index(N, cap, opt);
    if (r.index)
      c.emit({{"index", *r.index}, {"witness_order", r.witness.order}});
    else
      c.emit({{"index", nullptr}, {"cap", cap}});
  } else if (sub == "normal") {
    need(a, 1, 1, "group normal <l^e>");
    auto N = static_cast<std::uint32_t>(parse_u64(a[0], 2));
    Json list = Json::array();
    for (const auto& ns : normal_subgroups(N, budget))
      list.push_back({{"level", ns.level}, {"order", ns.H.order}});
    c.emit({{"N", N}, {"normal", list}});
  } else if (sub == "sym2") {
    need(a, 1, 1, "group sym2 <l>");
    auto l = static_cast<std::uint32_t>(parse_u64(a[0], 2));
    c.emit({{"l", l}, {"irreducible", sym2_irreducible(l)}});
  } else if (sub == "goursat") {
    // graph of conjugation by a seeded random element, decomposed and rebuilt
    need(a, 1, 1, "group goursat <N>");
    FiniteMatrixGroup G(static_cast<std::uint32_t>(parse_u64(a[0], 2)), budget);
    std::mt19937_64 rng(c.cfg.seed);
    std::size_t x = rng() % G.size(), xi = G.inv(x);
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    for (std::size_t s : {G.S(), G.T()}) gens.push_back({s, G.mul(G.mul(x, s), xi)});
    GoursatData d = goursat_decompose(G, G, gens);
    bool round_trip = goursat_reconstruct(G, G, d) == product_closure(G, G, gens);
    bool found = std::find(d.inner_by.begin(), d.inner_by.end(), x) != d.inner_by.end();
    c.emit({{"N", G.modulus()},
            {"conjugator", G.to_string(x)},
            {"quotient_order", d.quotient_order},
            {"inner_candidates", d.inner_by.size()},
            {"conjugator_recovered", found},
            {"round_trip", round_trip}});
  } else {
    throw CLI::ValidationError("unknown group subcommand");
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg = default_config();
  CLI::App app{"Computations for special subvarieties of products of modular curves", "speciallocus"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "seed for randomized searches");
  app.add_option("--precision", cfg.precision_bits, "working precision in bits");
  app.add_option("--mmax", cfg.M_max, "largest modular polynomial level");
  app.add_option("--search-cap", cfg.search_cap, "prime search cap");
  app.add_option("--budget", cfg.enumeration_budget, "group enumeration budget");
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (env SPECIALLOCUS_CACHE)");

  std::vector<std::string> pos;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    s->add_option("args", pos, "arguments")->allow_extra_args();
    return s;
  };
  leaf(&app, "classgroup", "class group of discriminant D");
  leaf(&app, "split", "is l split in the order of discriminant D");
  leaf(&app, "hilbert", "Hilbert class polynomial (cached)");
  leaf(&app, "orbit", "Galois orbit of CM points");
  leaf(&app, "modpoly", "modular polynomial Phi_m (cached)");
  leaf(&app, "hecke", "Hecke image T_m of a point");
  leaf(&app, "inclusion", "exact inclusion of the orbit of D in its T_l image");
  std::string j0 = "0";
  leaf(&app, "density", "orbit density probe, CSV")->add_option("--j0", j0, "start point re[,im]");
  CLI::App* chow = app.add_subcommand("chow", "Chow ring of (P^1)^n");
  chow->require_subcommand(1);
  chow->fallthrough();
  for (const char* s : {"mul", "degree", "push", "bound", "minimal"}) leaf(chow, s, "");
  leaf(&app, "chebotarev", "effective Chebotarev threshold");
  std::uint64_t lmin = 3;
  leaf(&app, "splitprime", "least prime split in every order")->add_option("--min", lmin, "primes above this");
  leaf(&app, "lemma71", "split prime / class number feasibility");
  leaf(&app, "descent", "degree ledger of the descent");
  CLI::App* lat = app.add_subcommand("lattice", "lattice classes in the tree");
  lat->require_subcommand(1);
  lat->fallthrough();
  for (const char* s : {"pos", "center"}) leaf(lat, s, "");
  leaf(&app, "label", "pairwise label matrix and multidegree");
  leaf(&app, "counting", "psi / 2^pi counting table");
  CLI::App* grp = app.add_subcommand("group", "SL2(Z/N)/{+-1}");
  grp->require_subcommand(1);
  grp->fallthrough();
  for (const char* s : {"order", "minindex", "normal", "sym2", "goursat"}) leaf(grp, s, "");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 64;
  }

  try {
    cfg.validate();
    Ctx c{cfg, out, CacheDir(cfg.cache_dir)};
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    std::string leafname = sub->get_subcommands().empty() ? "" : sub->get_subcommands().front()->get_name();
    if (name == "classgroup") cmd_classgroup(c, pos);
    else if (name == "split") cmd_split(c, pos);
    else if (name == "hilbert") cmd_hilbert(c, pos);
    else if (name == "orbit") cmd_orbit(c, pos);
    else if (name == "modpoly") cmd_modpoly(c, pos);
    else if (name == "hecke") cmd_hecke(c, pos);
    else if (name == "inclusion") cmd_inclusion(c, pos);
    else if (name == "density") cmd_density(c, pos, j0);
    else if (name == "chow") cmd_chow(c, leafname, pos);
    else if (name == "chebotarev") cmd_chebotarev(c, pos);
    else if (name == "splitprime") cmd_splitprime(c, pos, lmin);
    else if (name == "lemma71") cmd_lemma71(c, pos);
    else if (name == "descent") cmd_descent(c, pos);
    else if (name == "lattice") cmd_lattice(c, leafname, pos);
    else if (name == "label") cmd_label(c, pos);
    else if (name == "counting") cmd_counting(c, pos);
    else if (name == "group") cmd_group(c, leafname, pos);
    return 0;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 64;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace speciallocus
