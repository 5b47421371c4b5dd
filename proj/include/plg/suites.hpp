#pragma once

#include "plg/catalog.hpp"
#include "plg/json_io.hpp"
#include "plg/quantize_e2.hpp"

#include <ctime>
#include <iomanip>
#include <optional>
#include <set>

namespace plg {

// Fixed execution order.
inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"jacobi",   "invariance", "cocycle", "delta_consistency",
                                                 "bialgebra_axioms", "coboundary", "uniqueness", "manin",
                                                 "deform",   "twist",      "semiclassical", "dual_families"};
  return names;
}

// Negative-control knob -> the check it breaks.
inline const std::map<std::string, std::string>& corruption_knobs() {
  static const std::map<std::string, std::string> knobs = {
      {"structure_constant", "jacobi"},     {"psi_scale", "invariance"},      {"eta_b_sign", "cocycle"},
      {"delta_b_sign", "delta_consistency"}, {"cocycle_sign", "bialgebra_axioms"}, {"r_scale", "coboundary"},
      {"widen_space", "uniqueness"},        {"gstar_complex_diag", "manin"},  {"deform_sign", "deform"},
      {"s_scale", "twist"},                 {"crossed_sign", "semiclassical"}, {"rho_sign", "dual_families"}};
  return knobs;
}

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string pair = "su11";
  std::vector<std::string> checks;  // empty: every check applicable to the pair
  int samples = 0;                  // 0: per-check default
  std::uint64_t seed = 42;
  Tolerances tol;
  std::string corrupt;
  int p = 0;  // selects su(p,1) when pair is "supq1"
  int threads = 1;
};

struct Subject {
  std::optional<CatalogEntry> entry;
  std::optional<MatchedPair> imported;
  const MatchedPair& mp() const { return entry ? entry->mp : *imported; }
  bool is_catalog() const { return entry.has_value(); }
  bool is_su11() const { return entry && entry->p == 1; }
};

inline Subject load_subject(const RunConfig& cfg) {
  Subject s;
  if (cfg.pair == "supq1") {
    if (cfg.p < 1 || cfg.p > kMaxCatalogP) throw ConfigError("--p must be in [1, " + std::to_string(kMaxCatalogP) + "]");
    s.entry = supq1(cfg.p);
    return s;
  }
  auto names = catalog_names();
  if (std::find(names.begin(), names.end(), cfg.pair) != names.end()) {
    if (cfg.p != 0) throw ConfigError("--p only applies to pair 'supq1'");
    s.entry = catalog_entry(cfg.pair);
    return s;
  }
  if (!std::filesystem::exists(cfg.pair)) throw ConfigError("unknown pair '" + cfg.pair + "' (not a catalog name or file)");
  s.imported = pair_from_file(cfg.pair);
  return s;
}

inline bool applicable(const Subject& s, const std::string& check) {
  static const std::set<std::string> catalog_only = {"coboundary", "uniqueness", "manin", "deform", "twist"};
  static const std::set<std::string> su11_only = {"semiclassical", "dual_families"};
  if (su11_only.count(check)) return s.is_su11();
  if (catalog_only.count(check)) return s.is_catalog();
  if (check == "invariance" || check == "cocycle" || check == "delta_consistency")
    return s.mp().g().has_realization();
  return true;
}

inline void validate_config(const RunConfig& cfg) {
  const auto& names = check_names();
  for (const auto& c : cfg.checks)
    if (std::find(names.begin(), names.end(), c) == names.end()) throw ConfigError("unknown check '" + c + "'");
  if (!cfg.corrupt.empty() && !corruption_knobs().count(cfg.corrupt))
    throw ConfigError("unknown corruption knob '" + cfg.corrupt + "'");
  if (cfg.samples < 0) throw ConfigError("--samples must be positive");
  if (!(cfg.tol.algebraic > 0) || !(cfg.tol.fd > 0)) throw ConfigError("tolerances must be positive");
  if (cfg.threads < 1) throw ConfigError("--threads must be at least 1");
}

inline std::vector<std::string> planned_checks(const RunConfig& cfg, const Subject& s) {
  std::vector<std::string> out;
  for (const auto& c : check_names()) {
    bool wanted = cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
    if (!wanted) continue;
    if (!applicable(s, c)) {
      if (!cfg.checks.empty()) throw ConfigError("check '" + c + "' does not apply to pair '" + s.mp().name() + "'");
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// E(2) Poisson brackets and the E+(2) table against the displayed values.
inline double e2_poisson_reproduction(const MatchedPair& mp, const CircleData& cd, json* details = nullptr) {
  const cplx I(0, 1);
  int m = mp.m();
  RealVector ya = RealVector::Unit(m, 0), y2 = RealVector::Unit(m, 1);
  EFunction base = EFunction::fn(m, TrigPoly::mode(1));
  double lin = efunction_distance(poisson_bracket(mp, cd, EFunction::lin(ya), EFunction::lin(y2)), EFunction::lin(2 * y2));
  TrigPoly want_a = TrigPoly::mode(3, 0.5) - TrigPoly::mode(-1, 0.5);                    // i sin(2 phi) e^{i phi}
  TrigPoly want_2 = TrigPoly::mode(1, I) - TrigPoly::mode(3, 0.5 * I) - TrigPoly::mode(-1, 0.5 * I);
  double fa = trig_distance(poisson_bracket(mp, cd, EFunction::lin(ya), base).base, want_a);
  double f2 = trig_distance(poisson_bracket(mp, cd, EFunction::lin(y2), base).base, want_2);
  E2PlusTable t = e2_plus_brackets(mp, cd);
  TrigPoly ta = TrigPoly::mode(2) - TrigPoly::constant(1.0);                           // 2i sin(theta) e^{i theta}
  TrigPoly t2 = TrigPoly::mode(1, 2.0 * I) - TrigPoly::mode(2, I) - TrigPoly::constant(I);  // 2i(1 - cos theta) e^{i theta}
  RealVector two(2), vv(2);
  two << 0, 2;
  vv << 0, -2;
  double table = std::max({trig_distance(t.a_theta, ta), trig_distance(t.two_theta, t2), (t.a_two - two).cwiseAbs().maxCoeff(),
                           trig_distance(t.v1_theta, -ta), trig_distance(t.v2_theta, t2),
                           (t.v1_v2 - vv).cwiseAbs().maxCoeff()});
  if (details) {
    (*details)["linear"] = lin;
    (*details)["a_phi"] = fa;
    (*details)["two_phi"] = f2;
    (*details)["e2_plus_table"] = table;
  }
  return std::max({lin, fa, f2, table});
}

inline CheckResult retolerate(CheckResult r, double tol) {
  r.tolerance = tol;
  r.pass = r.max_residual <= tol;
  return r;
}

class SuiteRunner {
 public:
  SuiteRunner(const RunConfig& cfg, const Subject& s) : cfg_(cfg), s_(s), mp_(s.mp()) {}

  CheckResult run(const std::string& check) {
    Rng rng(cfg_.seed);
    CheckResult r = dispatch(check, rng);
    json d = {{"pair", mp_.name()}, {"seed", cfg_.seed}};
    for (auto it = r.details.begin(); it != r.details.end(); ++it)
      if (it.key() != "pair" && it.key() != "seed") d[it.key()] = it.value();
    if (!cfg_.corrupt.empty() && corruption_knobs().at(cfg_.corrupt) == check) d["corruption"] = cfg_.corrupt;
    r.details = std::move(d);
    return r;
  }

 private:
  bool corrupted(const char* knob) const { return cfg_.corrupt == knob; }
  int samples(int fallback) const { return cfg_.samples > 0 ? cfg_.samples : fallback; }
  double alg_tol() const { return cfg_.tol.algebraic; }

  const EAlgebra& ea() {
    if (!ea_) ea_ = build_e(mp_);
    return *ea_;
  }
  const Cobracket& delta() {
    if (!delta_) delta_ = delta_direct(ea());
    return *delta_;
  }
  const CatalogEntry& entry() const { return *s_.entry; }

  CheckResult dispatch(const std::string& c, Rng& rng) {
    if (c == "jacobi") return jacobi();
    if (c == "invariance") return invariance(rng);
    if (c == "cocycle") return cocycle(rng);
    if (c == "delta_consistency") return delta_consistency();
    if (c == "bialgebra_axioms") return bialgebra_axioms();
    if (c == "coboundary") return coboundary();
    if (c == "uniqueness") return uniqueness();
    if (c == "manin") return manin();
    if (c == "deform") return deform();
    if (c == "twist") return twist();
    if (c == "semiclassical") return semiclassical(rng);
    if (c == "dual_families") return dual_families();
    throw ConfigError("unknown check '" + c + "'");
  }

  CheckResult jacobi() {
    const LieAlgebra& g = mp_.g();
    LieAlgebra gg = corrupted("structure_constant") ? g.perturbed(0, 1, 1, 0.1) : g;
    json d;
    double w = check_jacobi(gg).max_residual;
    d["g"] = w;
    double we = check_jacobi(ea().e).max_residual;
    d["e"] = we;
    w = std::max(w, we);
    if (s_.is_catalog()) {
      EntryValidation v = validate_entry(entry());
      d["entry"] = {{"projectors", v.projectors},     {"dual_pairing", v.dual_pairing},
                    {"z_normalization", v.z_normalization}, {"realization", v.realization},
                    {"dual_displayed", v.dual_displayed}};
      w = std::max(w, v.worst());
    }
    return make_result("jacobi", 1, w, alg_tol(), d);
  }

  CheckResult invariance(Rng& rng) {
    int n = samples(100);
    double scale = corrupted("psi_scale") ? 1.1 : 1.0;
    double w = 0;
    for (int i = 0; i < n; ++i) w = std::max(w, invariance_residual(mp_, sample_b(mp_, rng), scale));
    return make_result("invariance", n, w, alg_tol());
  }

  CheckResult cocycle(Rng& rng) {
    CocycleOptions opt;
    opt.eta_b_sign = corrupted("eta_b_sign") ? -1.0 : 1.0;
    opt.threads = cfg_.threads;
    CheckResult r = verify_cocycle(mp_, samples(1000), rng, opt);
    r.check = "cocycle";
    return retolerate(r, alg_tol());
  }

  CheckResult delta_consistency() {
    DeltaOptions opt;
    opt.delta_b_sign = corrupted("delta_b_sign") ? -1.0 : 1.0;
    double w = cobracket_distance(delta_direct(ea(), opt), delta_from_eta(mp_, cfg_.tol.fd_step));
    return make_result("delta_consistency", ea().dim(), w, cfg_.tol.fd, {{"fd_step", cfg_.tol.fd_step}});
  }

  CheckResult bialgebra_axioms() {
    Cobracket d = delta();
    if (corrupted("cocycle_sign")) {
      std::vector<RealMatrix> img;
      for (int i = 0; i < d.dim(); ++i) img.push_back(i < ea().m() ? RealMatrix(-d.image(i)) : d.image(i));
      d = Cobracket(d.space(), std::move(img));
    }
    CobracketAxioms a = check_cobracket_axioms(ea().e, d, ea().m());
    double w = std::max({a.co_jacobi, a.cocycle, a.dual_jacobi, a.landing});
    return make_result("bialgebra_axioms", ea().dim(), w, alg_tol(),
                       {{"co_jacobi", a.co_jacobi}, {"cocycle", a.cocycle}, {"dual_jacobi", a.dual_jacobi}, {"landing", a.landing}});
  }

  CheckResult coboundary() {
    RMatrixRoutes routes = r_matrix(ea(), delta(), entry().cartan, entry().z, alg_tol());
    Bivector r = corrupted("r_scale") ? routes.route_a * 1.5 : routes.route_a;
    CheckResult c = check_coboundary(ea(), delta(), r, alg_tol());
    c.max_residual = std::max(c.max_residual, routes.difference);
    c.pass = c.max_residual <= c.tolerance;
    c.details["route_sign"] = routes.sign;
    c.details["route_difference"] = routes.difference;
    c.details["block_residual"] = routes.block_residual;
    return c;
  }

  CheckResult uniqueness() {
    UniquenessOptions opt;
    opt.widen = corrupted("widen_space");
    UniquenessReport u = check_r_uniqueness(ea(), opt, cfg_.tol.svd_threshold);
    CheckResult c = make_result("uniqueness", u.candidates, u.kernel_dim, 0.0,
                                {{"kernel_dim", u.kernel_dim},
                                 {"candidates", u.candidates},
                                 {"smallest_singular_value", u.smallest_singular_value},
                                 {"svd_threshold", u.threshold},
                                 {"residual", "kernel dimension"}});
    return c;
  }

  CheckResult manin() {
    const LieAlgebra& g = mp_.g();
    LieAlgebra big = complexify(g);
    std::vector<ComplexMatrix> gs = entry().gstar.realization();
    if (corrupted("gstar_complex_diag"))
      for (int k = 0; k < entry().p; ++k) gs[k] *= cplx(0, 1);
    GPrime gp = build_gprime(ea(), alg_tol());
    ManinReport r1 = check_manin(make_manin(big, g.realization(), gs, "g", "g*"), alg_tol());
    ManinReport r2 = check_manin(make_manin(big, gp.mats, gs, "g'", "g*"), alg_tol());
    double k0 = 0;
    for (const auto& a : mp_.psi_matrices())
      for (const auto& b : mp_.psi_matrices()) k0 = std::max(k0, max_abs(commutator(a, b)));
    double w = std::max({r1.worst(), r2.worst(), k0, gp.transport_residual});
    if (r1.nondegeneracy <= 1e-8 || r2.nondegeneracy <= 1e-8) w = std::max(w, 1.0);
    auto rep = [](const ManinReport& r) {
      return json{{"isotropy", std::max(r.isotropy_a, r.isotropy_b)},
                  {"complementarity", r.complementarity},
                  {"smallest_singular_value", r.smallest_singular_value},
                  {"invariance", r.invariance},
                  {"closure", std::max(r.closure_a, r.closure_b)},
                  {"nondegeneracy", r.nondegeneracy}};
    };
    return make_result("manin", 2, w, alg_tol(),
                       {{"k0_abelian", k0},
                        {"g_gstar", rep(r1)},
                        {"gprime_gstar", rep(r2)},
                        {"gprime_mixed_sign", gp.mixed_sign},
                        {"gprime_vs_e", gp.transport_residual}});
  }

  CheckResult deform() {
    double s = corrupted("deform_sign") ? -1.0 : 1.0;
    DeformResult plus = deform_bracket(mp_, entry().cartan, s);
    DeformResult minus = deform_bracket(mp_, entry().cartan, -s);
    double dist = structure_distance_in_basis(mp_.g(), plus.basis, plus.alg);
    double jac = check_jacobi(minus.alg).max_residual;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(minus.alg.killing());
    double lmax = es.eigenvalues().maxCoeff();
    double w = std::max({dist, jac, lmax < 0 ? 0.0 : 1.0 + lmax});
    return make_result("deform", 2, w, alg_tol(),
                       {{"plus_vs_g", dist}, {"minus_jacobi", jac}, {"minus_killing_max_eigenvalue", lmax},
                        {"phi_condition", plus.phi_condition}});
  }

  CheckResult twist() {
    GPrime gp = build_gprime(ea(), alg_tol());
    TwistOptions opt;
    if (corrupted("s_scale")) opt.s_multiplier = 2.0;
    TwistReport r = twist_check(entry().gstar, mp_.g(), entry().cartan, entry().z, gp.mats, opt, alg_tol());
    opt.rotate_seed = cfg_.seed | 1u;
    TwistReport rr = twist_check(entry().gstar, mp_.g(), entry().cartan, entry().z, gp.mats, opt, alg_tol());
    double basis = max_abs(r.s - rr.s);
    double w = std::max({r.worst(), rr.worst(), basis});
    return make_result("twist", 2, w, alg_tol(),
                       {{"scale", opt.scale},
                        {"antisymmetry", r.antisymmetry},
                        {"schouten_ss", r.schouten_ss},
                        {"ds", r.ds},
                        {"maurer_cartan", r.maurer_cartan},
                        {"twist", r.twist},
                        {"support", r.support},
                        {"basis_change", basis}});
  }

  CheckResult semiclassical(Rng& rng) {
    CircleData cd = circle_data(mp_);
    json d;
    double pr = e2_poisson_reproduction(mp_, cd, &d);
    CrossedAlgebra alg = CrossedAlgebra::from_pair(mp_, cd, corrupted("crossed_sign") ? -1.0 : 1.0);
    SemiclassicalReport s = verify_semiclassical(alg, 4, 6, alg_tol());
    Coproduct D(alg, cd, ActionChoice::Forward);
    CoproductReport cp = check_coproduct(alg, D, rng, samples(50));
    double w = std::max({pr, s.max_h0_residual, s.max_exact_residual, cp.coassociativity, cp.homomorphism,
                         s.negative_power ? 1.0 : 0.0});
    return make_result("semiclassical", static_cast<int>(s.pairs), w, alg_tol(),
                       {{"poisson", d},
                        {"degrees", s.maxdeg},
                        {"modes", s.maxmode},
                        {"max_h0_residual", s.max_h0_residual},
                        {"max_exact_residual", s.max_exact_residual},
                        {"negative_h_power", s.negative_power},
                        {"pairs_with_higher_order", s.pairs_with_higher_order},
                        {"coassociativity", cp.coassociativity},
                        {"homomorphism", cp.homomorphism},
                        {"coproduct_action", "action_on_c(a)"}});
  }

  CheckResult dual_families() {
    DualFamilies f = e2_dual_families(delta(), 1.0, corrupted("rho_sign") ? -1.0 : 1.0);
    double w = std::max({f.intertwiner, f.jacobi_1, f.jacobi_3, f.p1p2_1, f.own_residual});
    return make_result("dual_families", 1, w, alg_tol(),
                       {{"s", f.s},
                        {"intertwiner", f.intertwiner},
                        {"jacobi_1", f.jacobi_1},
                        {"jacobi_3", f.jacobi_3},
                        {"own_scale", f.own_scale},
                        {"own_residual", f.own_residual}});
  }

  const RunConfig& cfg_;
  const Subject& s_;
  const MatchedPair& mp_;
  std::optional<EAlgebra> ea_;
  std::optional<Cobracket> delta_;
};

inline json result_to_json(const CheckResult& r) {
  return {{"check", r.check},
          {"samples", r.samples},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"details", r.details}};
}

inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunOutcome {
  json report;
  std::vector<CheckResult> results;
  bool pass = true;
};

inline RunOutcome run(const RunConfig& cfg, const Subject& s) {
  validate_config(cfg);
  auto plan = planned_checks(cfg, s);
  RunOutcome out;
  SuiteRunner runner(cfg, s);
  json results = json::array();
  for (const auto& c : plan) {
    out.results.push_back(runner.run(c));
    results.push_back(result_to_json(out.results.back()));
    out.pass = out.pass && out.results.back().pass;
  }
  json conv = json::array();
  if (s.is_catalog())
    for (const auto& c : conventions_report(*s.entry)) conv.push_back({{"table", c.table}, {"sign", c.sign}, {"note", c.note}});
  out.report = {{"meta",
                 {{"version", kVersion},
                  {"seed", cfg.seed},
                  {"prng", Rng::algorithm},
                  {"exp_method", kExpMethod},
                  {"tolerances",
                   {{"algebraic", cfg.tol.algebraic},
                    {"fd", cfg.tol.fd},
                    {"fd_step", cfg.tol.fd_step},
                    {"svd_threshold", cfg.tol.svd_threshold}}},
                  {"timestamp", utc_timestamp()}}},
                {"pair", s.mp().name()},
                {"corrupt", cfg.corrupt.empty() ? json(nullptr) : json(cfg.corrupt)},
                {"conventions", conv},
                {"results", results},
                {"pass", out.pass}};
  return out;
}

inline RunOutcome run(const RunConfig& cfg) {
  validate_config(cfg);
  Subject s = load_subject(cfg);
  return run(cfg, s);
}

// ---- text summary ----

inline std::vector<std::string> display_labels(const Subject& s) {
  std::vector<std::string> labels = s.mp().e_space()->labels();
  if (s.is_su11()) labels = {"P1", "P2", "J"};
  return labels;
}

inline std::string fmt_num(double x) {
  std::ostringstream o;
  o << std::setprecision(6) << x;
  return o.str();
}

inline std::string linear_combo(const RealVector& v, const std::vector<std::string>& labels, double eps = 1e-12) {
  std::ostringstream o;
  bool first = true;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= eps) continue;
    double c = v(i);
    o << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (std::abs(std::abs(c) - 1.0) > eps) o << fmt_num(std::abs(c)) << " ";
    o << labels[i];
    first = false;
  }
  return first ? "0" : o.str();
}

inline std::string bracket_table_text(const LieAlgebra& L, const std::vector<std::string>& labels) {
  std::ostringstream o;
  for (int i = 0; i < L.dim(); ++i)
    for (int j = i + 1; j < L.dim(); ++j) {
      RealVector b = L.bracket(RealVector::Unit(L.dim(), i), RealVector::Unit(L.dim(), j));
      if (b.cwiseAbs().maxCoeff() <= 1e-12) continue;
      o << "  [" << labels[i] << ", " << labels[j] << "] = " << linear_combo(b, labels) << "\n";
    }
  return o.str();
}

inline std::string cobracket_table_text(const Cobracket& d, const std::vector<std::string>& labels) {
  std::ostringstream o;
  int N = d.dim();
  for (int x = 0; x < N; ++x) {
    const RealMatrix& M = d.image(x);
    o << "  delta(" << labels[x] << ") = ";
    bool first = true;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        double c = M(i, j);
        if (std::abs(c) <= 1e-12) continue;
        o << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        if (std::abs(std::abs(c) - 1.0) > 1e-12) o << fmt_num(std::abs(c)) << " ";
        o << labels[i] << "^" << labels[j];
        first = false;
      }
    o << (first ? "0" : "") << "\n";
  }
  return o.str();
}

inline std::string text_summary(const RunOutcome& out, const Subject& s) {
  std::ostringstream o;
  o << "pair " << s.mp().name() << "  seed " << out.report["meta"]["seed"].get<std::uint64_t>() << "\n";
  for (const auto& r : out.results)
    o << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(18) << r.check << " residual " << fmt_num(r.max_residual)
      << "  tol " << fmt_num(r.tolerance) << "\n";
  if (s.is_catalog()) {
    o << "conventions:\n";
    for (const auto& c : out.report["conventions"])
      o << "  " << c["table"].get<std::string>() << ": " << fmt_num(c["sign"].get<double>())
        << (c["note"].get<std::string>().empty() ? "" : "  (" + c["note"].get<std::string>() + ")") << "\n";
    EAlgebra ea = build_e(s.mp());
    auto labels = display_labels(s);
    o << "e brackets:\n" << bracket_table_text(ea.e, labels);
    o << "e cobracket:\n" << cobracket_table_text(delta_direct(ea), labels);
  }
  o << (out.pass ? "ALL PASS" : "FAILURES") << "\n";
  return o.str();
}

}  // namespace plg
