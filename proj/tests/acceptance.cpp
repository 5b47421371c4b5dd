#include "plg/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace plg;

namespace {

constexpr double kAlg = 1e-9;
constexpr double kFd = 1e-6;
constexpr double kExact = 1e-12;
constexpr double kSvd = 1e-8;
constexpr double kNegative = 1e-3;
constexpr double kCocycleSeconds = 10.0;
constexpr double kSemiclassicalSeconds = 30.0;
constexpr std::uint64_t kSeed = 42;

const std::vector<std::string> kSmall = {"su11", "su21", "su31"};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome cocycle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : kSmall) {
    CatalogEntry e = catalog_entry(name);
    Rng rng(kSeed);
    CheckResult r = verify_cocycle(e.mp, 1000, rng);
    o.require(r.max_residual <= kAlg, name + " " + num(r.max_residual));
  }
  double t = seconds_since(t0);
  o.require(t < kCocycleSeconds, "time " + num(t) + "s");
  return o;
}

Outcome eta_forms() {
  Outcome o;
  for (const auto& name : kSmall) {
    CatalogEntry e = catalog_entry(name);
    Rng rng(kSeed);
    double w = 0;
    for (int s = 0; s < 200; ++s) {
      EElement g = sample_e(e.mp, rng);
      w = std::max(w, max_abs(eta0(e.mp, g).coeffs() - eta_alternative(e.mp, g).coeffs()));
    }
    o.require(w <= kAlg, name + " " + num(w));
  }
  return o;
}

Outcome adjoint() {
  Outcome o;
  for (const auto& name : kSmall) {
    CatalogEntry e = catalog_entry(name);
    Rng rng(kSeed);
    double w = 0;
    for (int s = 0; s < 100; ++s) {
      EElement g = sample_e(e.mp, rng);
      w = std::max(w, max_abs(AdE(e.mp, g) - AdE_fd(e.mp, g, 1e-4)));
    }
    o.require(w <= kFd, name + " " + num(w));
  }
  return o;
}

Outcome e2_poisson() {
  Outcome o;
  CatalogEntry e = su11();
  json d;
  double w = e2_poisson_reproduction(e.mp, circle_data(e.mp), &d);
  for (auto it = d.begin(); it != d.end(); ++it) o.require(it.value().get<double>() <= kExact, it.key() + " " + num(it.value()));
  o.require(w <= kExact, "worst " + num(w));
  return o;
}

Outcome coboundary() {
  Outcome o;
  for (const auto& name : kSmall) {
    CatalogEntry e = catalog_entry(name);
    EAlgebra ea = build_e(e.mp);
    Cobracket d = delta_direct(ea);
    RMatrixRoutes r = r_matrix(ea, d, e.cartan, e.z, kAlg);
    CheckResult c = check_coboundary(ea, d, r.route_a, kAlg);
    o.require(c.pass, name + " coboundary " + num(c.max_residual));
    o.require(r.difference <= kAlg, name + " routes sign " + std::to_string(r.sign) + " diff " + num(r.difference));
    if (name == "su11") {
      // J ^ P2 over (P1, P2, J)
      RealMatrix jp2 = wedge_coeffs(RealVector::Unit(3, 2), RealVector::Unit(3, 1));
      double w = max_abs(r.route_b.coeffs() - jp2);
      o.require(w <= kExact, "su11 route B = J^P2 " + num(w));
    }
  }
  return o;
}

Outcome delta_routes() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    double w = cobracket_distance(delta_direct(build_e(e.mp)), delta_from_eta(e.mp, 1e-4));
    o.require(w <= kFd, name + " " + num(w));
  }
  return o;
}

Outcome su_p1_tables() {
  Outcome o;
  for (int p : {2, 3}) {
    CatalogEntry e = supq1(p);
    std::string tag = "p=" + std::to_string(p) + " ";
    Cobracket d = delta_direct(build_e(e.mp));
    Rng rng(kSeed);
    for (const TableMatch& t : {s_bracket_table(e), dual_basis_table(e), delta_k0_table(e, d), adstar_U_table(e, rng, 50)})
      o.require(t.residual <= kAlg, tag + t.table + " sign " + std::to_string(t.sign) + " " + num(t.residual) +
                                        (t.note.empty() ? "" : " (" + t.note + ")"));
  }
  return o;
}

Outcome uniqueness() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    UniquenessReport u = check_r_uniqueness(build_e(catalog_entry(name).mp), {}, kSvd);
    o.require(u.kernel_dim == 0, name + " kernel " + std::to_string(u.kernel_dim));
  }
  return o;
}

Outcome manin() {
  Outcome o;
  for (int p = 1; p <= 3; ++p) {
    CatalogEntry e = supq1(p);
    std::string tag = "p=" + std::to_string(p) + " ";
    double k0 = 0;
    for (const auto& a : e.mp.psi_matrices())
      for (const auto& b : e.mp.psi_matrices()) k0 = std::max(k0, max_abs(commutator(a, b)));
    o.require(k0 == 0.0, tag + "k0 abelian " + num(k0));
    LieAlgebra big = complexify(e.mp.g());
    EAlgebra ea = build_e(e.mp);
    GPrime gp = build_gprime(ea, kAlg);
    ManinReport r1 = check_manin(make_manin(big, e.mp.g().realization(), e.gstar.realization(), "g", "g*"), kAlg);
    ManinReport r2 = check_manin(make_manin(big, gp.mats, e.gstar.realization(), "g'", "g*"), kAlg);
    o.require(r1.worst() <= kAlg && r1.nondegeneracy > kSvd, tag + "(gC,g,g*) " + num(r1.worst()));
    o.require(r2.worst() <= kAlg && r2.nondegeneracy > kSvd, tag + "(gC,g',g*) " + num(r2.worst()));
    DeformResult plus = deform_bracket(e.mp, e.cartan, 1.0);
    double dist = structure_distance_in_basis(e.mp.g(), plus.basis, plus.alg);
    o.require(dist <= kAlg, tag + "deform(+1) " + num(dist));
    DeformResult minus = deform_bracket(e.mp, e.cartan, -1.0);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(minus.alg.killing());
    double lmax = es.eigenvalues().maxCoeff();
    o.require(lmax < 0, tag + "deform(-1) Killing max " + num(lmax));
    if (p <= 2) {
      TwistReport t = twist_check(e.gstar, e.mp.g(), e.cartan, e.z, gp.mats, {}, kAlg);
      o.require(t.maurer_cartan <= kAlg, tag + "[s,s]/2+ds " + num(t.maurer_cartan));
      o.require(t.twist <= kAlg, tag + "twist " + num(t.twist));
    }
  }
  return o;
}

Outcome semiclassical() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  CatalogEntry e = su11();
  CircleData cd = circle_data(e.mp);
  CrossedAlgebra alg = CrossedAlgebra::from_pair(e.mp, cd);
  SemiclassicalReport s = verify_semiclassical(alg, 4, 6, kAlg);
  o.require(s.max_h0_residual == 0.0 || s.max_h0_residual <= kExact, "h^0 " + num(s.max_h0_residual));
  o.require(s.max_exact_residual <= kExact, "exact cases " + num(s.max_exact_residual));
  o.require(!s.negative_power, "no negative h powers");
  o.detail += "; pairs " + std::to_string(s.pairs);
  Coproduct D(alg, cd, ActionChoice::Forward);
  Rng rng(kSeed);
  CoproductReport c = check_coproduct(alg, D, rng, 50);
  o.require(c.coassociativity <= kAlg, "coassociativity " + num(c.coassociativity));
  o.require(c.homomorphism <= kAlg, "homomorphism " + num(c.homomorphism));
  double t = seconds_since(t0);
  o.require(t < kSemiclassicalSeconds, "time " + num(t) + "s");
  return o;
}

Outcome negative_controls() {
  Outcome o;
  for (const auto& [knob, check] : corruption_knobs()) {
    RunConfig c;
    c.pair = "su11";
    c.checks = {check};
    c.corrupt = knob;
    c.samples = 20;
    RunOutcome r = run(c);
    double w = r.results.at(0).max_residual;
    o.require(!r.pass && w > kNegative, knob + " " + num(w));
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig c;
  c.pair = "su11";
  c.samples = 30;
  c.seed = 7;
  json a = run(c).report, b = run(c).report;
  a["meta"].erase("timestamp");
  b["meta"].erase("timestamp");
  std::string sa = a.dump(2), sb = b.dump(2);
  o.require(sa == sb, "byte-identical (" + std::to_string(sa.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"eta cocycle, 1000 samples x 3 pairs", cocycle},
      {"eta0 against the alternative formula", eta_forms},
      {"Ad^E against finite differences", adjoint},
      {"E(2) and E+(2) Poisson brackets", e2_poisson},
      {"coboundary and r-matrix routes", coboundary},
      {"cobracket two-route consistency", delta_routes},
      {"su(p,1) tables for p = 2, 3", su_p1_tables},
      {"r-matrix uniqueness", uniqueness},
      {"Manin triples, deformation, twist", manin},
      {"semiclassical limit and coproduct", semiclassical},
      {"negative controls", negative_controls},
      {"determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1 < 10 ? " " : "") << i + 1 << "  "
              << criteria[i].first << "  [" << o.detail << "]" << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
