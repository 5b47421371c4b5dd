#pragma once

#include "plg/manin_twist.hpp"

namespace plg {

inline constexpr int kMaxCatalogP = 4;

struct CatalogEntry {
  std::string name;
  int p = 1;
  MatchedPair mp;
  SubspaceDecomposition iwasawa;  // k, a, n
  SubspaceDecomposition cartan;   // k, p
  RealVector z;
  LieAlgebra gstar;
  RealMatrix root_f1, root_2f1;
  std::vector<ComplexMatrix> psi_displayed;  // dual basis of k0 as printed
  std::map<std::string, std::string> aliases;
};

namespace detail {

// u(p) -> su(p,1), X -> diag(X, -tr X)
inline ComplexMatrix embed_up(const ComplexMatrix& X) {
  int p = static_cast<int>(X.rows());
  ComplexMatrix m = ComplexMatrix::Zero(p + 1, p + 1);
  m.topLeftCorner(p, p) = X;
  m(p, p) = -X.trace();
  return m;
}

inline RealMatrix coords_matrix(const LieAlgebra& g, const std::vector<ComplexMatrix>& mats, double tol) {
  RealMatrix out(g.dim(), static_cast<Eigen::Index>(mats.size()));
  for (size_t j = 0; j < mats.size(); ++j) {
    double res = 0;
    out.col(static_cast<Eigen::Index>(j)) = g.coords_of(mats[j], &res);
    if (res > tol) throw std::logic_error("catalog: matrix outside su(p,1)");
  }
  return out;
}

}  // namespace detail

inline CatalogEntry supq1(int p) {
  if (p < 1 || p > kMaxCatalogP)
    throw std::invalid_argument("supq1: p must be in [1, " + std::to_string(kMaxCatalogP) + "]");
  int n = p + 1, P = p - 1, L = p;  // 0-based indices of the last two rows
  const cplx I(0, 1);
  auto E = [&](int i, int j, cplx v = 1.0) { return unit(n, i, j, v); };

  std::vector<ComplexMatrix> mats;
  std::vector<std::string> labels;
  for (int k = 0; k < p; ++k) {
    mats.push_back(detail::embed_up(unit(p, k, k, I)));
    labels.push_back(p == 1 ? "ih" : "kD" + std::to_string(k + 1));
  }
  for (int k = 0; k < p; ++k)
    for (int l = k + 1; l < p; ++l) {
      std::string s = std::to_string(k + 1) + std::to_string(l + 1);
      mats.push_back(detail::embed_up(unit(p, k, l) - unit(p, l, k)));
      labels.push_back("kA" + s);
      mats.push_back(detail::embed_up(unit(p, k, l, I) + unit(p, l, k, I)));
      labels.push_back("kS" + s);
    }
  int kdim = static_cast<int>(mats.size());

  mats.push_back(E(P, L) + E(L, P));
  labels.push_back("y(a)");
  mats.push_back(E(P, P, I) - E(P, L, I) + E(L, P, I) - E(L, L, I));
  labels.push_back("y(2)");
  std::vector<ComplexMatrix> psi{E(P, L, I), E(P, L)};
  for (int k = 0; k < p - 1; ++k) {
    std::string s = std::to_string(k + 1);
    mats.push_back(-E(k, P) + E(k, L) + E(P, k) + E(L, k));
    labels.push_back("y(R)" + s);
    mats.push_back(E(k, P, I) - E(k, L, I) + E(P, k, I) + E(L, k, I));
    labels.push_back("y(I)" + s);
    psi.push_back(E(k, L, I));
    psi.push_back(E(k, L));
  }
  int dim = static_cast<int>(mats.size());

  LieAlgebra g = LieAlgebra::from_realization(labels, mats, PairingKind::ImTrace).with_dual_realization(gstar_matrices(p));
  std::vector<int> bi, ci;
  for (int i = 0; i < dim; ++i) (i < kdim ? bi : ci).push_back(i);
  std::string name = "su" + std::to_string(p) + "1";
  MatchedPair mp(name, g, bi, ci);

  RealMatrix Kb = columns(dim, bi);
  RealMatrix A = columns(dim, {kdim});
  std::vector<int> ni;
  for (int i = kdim + 1; i < dim; ++i) ni.push_back(i);
  SubspaceDecomposition iwasawa(g, {{"k", Kb}, {"a", A}, {"n", columns(dim, ni)}});

  std::vector<ComplexMatrix> pm;
  for (int k = 0; k < p; ++k) {
    pm.push_back(E(k, L) + E(L, k));
    pm.push_back(E(k, L, I) - E(L, k, I));
  }
  SubspaceDecomposition cartan(g, {{"k", Kb}, {"p", detail::coords_matrix(g, pm, 1e-9)}});
  if (!cartan.is_subalgebra("k")) throw std::logic_error("supq1: k not closed");

  ComplexMatrix z0 = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < p; ++k) z0(k, k) = I;
  z0(L, L) = -static_cast<double>(p) * I;
  RealVector z = normalize_z(g, cartan, detail::coords_matrix(g, {z0}, 1e-9).col(0));

  std::vector<int> f1;
  for (int i = kdim + 2; i < dim; ++i) f1.push_back(i);

  CatalogEntry e{name, p, std::move(mp), std::move(iwasawa), std::move(cartan), std::move(z), build_gstar(p),
                 columns(dim, f1), columns(dim, {kdim + 1}), std::move(psi), {}};
  if (p == 1) e.aliases = {{"J", "ih"}, {"P1", "y(a)*"}, {"P2", "y(2)*"}};
  return e;
}

inline CatalogEntry su11() { return supq1(1); }

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (int p = 1; p <= kMaxCatalogP; ++p) out.push_back("su" + std::to_string(p) + "1");
  return out;
}

inline CatalogEntry catalog_entry(const std::string& name) {
  for (int p = 1; p <= kMaxCatalogP; ++p)
    if (name == "su" + std::to_string(p) + "1") return supq1(p);
  throw std::out_of_range("catalog: unknown pair '" + name + "'");
}

// Entry-level invariants: Jacobi, projectors, dual pairing, z normalization, realization.
struct EntryValidation {
  double jacobi = 0, projectors = 0, dual_pairing = 0, z_normalization = 0, realization = 0, dual_displayed = 0;
  double worst() const { return std::max({jacobi, projectors, dual_pairing, z_normalization, realization, dual_displayed}); }
};

inline EntryValidation validate_entry(const CatalogEntry& e) {
  EntryValidation v;
  const LieAlgebra& g = e.mp.g();
  v.jacobi = check_jacobi(g).max_residual;
  v.projectors = std::max({e.mp.decomp().projector_residual(), e.iwasawa.projector_residual(), e.cartan.projector_residual()});
  RealMatrix pr = e.mp.psi() * e.mp.y_basis() - RealMatrix::Identity(e.mp.m(), e.mp.m());
  v.dual_pairing = std::max(max_abs(pr), max_abs(e.mp.psi() * e.mp.b_basis()));
  RealMatrix ad = g.ad_matrix(e.z);
  RealMatrix M = e.cartan.part_coords("p") * ad * ad * e.cartan.basis("p");
  v.z_normalization = max_abs(M + RealMatrix::Identity(M.rows(), M.cols()));
  v.realization = realization_residual(g);
  for (size_t i = 0; i < e.psi_displayed.size(); ++i)
    v.dual_displayed = std::max(v.dual_displayed, max_abs(e.mp.psi_matrices()[i] - e.psi_displayed[i]));
  return v;
}

// ---- displayed tables ----

struct TableMatch {
  std::string table;
  int sign = 1;
  double residual = 0;  // after applying sign
  std::string note;
  bool matches(double tol) const { return residual <= tol; }
};

template <class A, class B>
TableMatch fit_sign(std::string table, const A& computed, const B& displayed, std::string note = "") {
  double plus = max_abs(computed - displayed), minus = max_abs(computed + displayed);
  TableMatch t{std::move(table), plus <= minus ? 1 : -1, std::min(plus, minus), std::move(note)};
  return t;
}

// e(2) relations [P1,P2] = 0, [J,P1] = 2P2, [J,P2] = -2P1 over (P1, P2, J).
inline TableMatch e2_relations_table(const EAlgebra& ea) {
  if (ea.mp.name() != "su11") throw std::invalid_argument("e2_relations_table: requires su11");
  std::vector<double> shown(27, 0.0);
  auto at = [&](int i, int j, int l) -> double& { return shown[(i * 3 + j) * 3 + l]; };
  at(2, 0, 1) = 2, at(0, 2, 1) = -2;
  at(2, 1, 0) = -2, at(1, 2, 0) = 2;
  Eigen::Map<const RealVector> a(ea.e.structure().data(), 27), b(shown.data(), 27);
  return fit_sign("e(2) relations", a, b);
}

// s-bracket table of su(p,1) in y-coordinates.
inline TableMatch s_bracket_table(const CatalogEntry& e) {
  int m = e.mp.m(), p = e.p;
  std::vector<double> shown(static_cast<size_t>(m) * m * m, 0.0), got(shown.size());
  auto idx = [&](int i, int j, int l) { return (static_cast<size_t>(i) * m + j) * m + l; };
  auto set = [&](int i, int j, int l, double v) {
    shown[idx(i, j, l)] = v;
    shown[idx(j, i, l)] = -v;
  };
  set(0, 1, 1, 2.0);
  for (int k = 0; k < p - 1; ++k) {
    int R = 2 + 2 * k, Im = R + 1;
    set(0, R, R, 1.0);
    set(0, Im, Im, 1.0);
    set(R, Im, 1, 2.0);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      RealVector br = e.mp.c_bracket(RealVector::Unit(m, i), RealVector::Unit(m, j));
      for (int l = 0; l < m; ++l) got[idx(i, j, l)] = br(l);
    }
  Eigen::Map<const RealVector> a(got.data(), static_cast<Eigen::Index>(got.size())),
      b(shown.data(), static_cast<Eigen::Index>(shown.size()));
  return fit_sign("s bracket table", a, b);
}

inline TableMatch dual_basis_table(const CatalogEntry& e) {
  double w = 0;
  for (size_t i = 0; i < e.psi_displayed.size(); ++i)
    w = std::max(w, max_abs(e.mp.psi_matrices()[i] - e.psi_displayed[i]));
  return {"k0 dual basis", 1, w, ""};
}

// Displayed cobracket on k0 as e-coefficient matrices.
inline std::vector<RealMatrix> delta_k0_displayed(int p) {
  int m = 2 * p, N = m + p * p;
  std::vector<RealMatrix> d(m, RealMatrix::Zero(N, N));
  d[1] += wedge_coeffs(RealVector::Unit(N, 0), RealVector::Unit(N, 1));
  for (int k = 0; k < p - 1; ++k) {
    int R = 2 + 2 * k, Im = R + 1;
    d[R] += wedge_coeffs(RealVector::Unit(N, 0), RealVector::Unit(N, R));
    d[Im] += wedge_coeffs(RealVector::Unit(N, 0), RealVector::Unit(N, Im));
    d[1] += 2.0 * wedge_coeffs(RealVector::Unit(N, R), RealVector::Unit(N, Im));
  }
  return d;
}

inline TableMatch delta_k0_table(const CatalogEntry& e, const Cobracket& delta) {
  auto shown = delta_k0_displayed(e.p);
  int m = e.mp.m();
  RealMatrix a(m, delta.dim() * delta.dim()), b(m, delta.dim() * delta.dim());
  for (int i = 0; i < m; ++i) {
    a.row(i) = Eigen::Map<const RealVector>(delta.image(i).data(), a.cols());
    b.row(i) = Eigen::Map<const RealVector>(shown[i].data(), b.cols());
  }
  TableMatch t = fit_sign("k0 cobracket table", a, b);
  // per-entry diagnosis for the report
  double worst = 0;
  int where = -1;
  for (int i = 0; i < m; ++i) {
    double r = max_abs(delta.image(i) - t.sign * shown[i]);
    if (r > worst) worst = r, where = i;
  }
  if (where >= 0 && worst > 1e-9) t.note = "largest mismatch at delta(" + e.mp.e_space()->label(where) + ")";
  return t;
}

// r = sum P^C_k y_i ^ y_i*, with the displayed k-parts.
inline TableMatch r_table(const CatalogEntry& e, const Bivector& route_b) {
  int p = e.p, n = p + 1, P = p - 1, L = p, m = e.mp.m(), N = m + e.mp.k();
  const cplx I(0, 1);
  std::vector<std::pair<ComplexMatrix, int>> shown{{unit(n, P, P, I) - unit(n, L, L, I), 1}};
  for (int k = 0; k < p - 1; ++k) {
    shown.emplace_back(unit(n, P, k) - unit(n, k, P), 2 + 2 * k);
    shown.emplace_back(unit(n, k, P, I) + unit(n, P, k, I), 3 + 2 * k);
  }
  RealMatrix M = RealMatrix::Zero(N, N);
  for (const auto& [mat, i] : shown) {
    double res = 0;
    RealVector x = RealVector::Zero(N);
    x.tail(e.mp.k()) = e.mp.b_coords() * e.mp.g().coords_of(mat, &res);
    if (res > 1e-9) throw std::logic_error("r_table: displayed k-part outside su(p,1)");
    M += wedge_coeffs(x, RealVector::Unit(N, i));
  }
  return fit_sign("r-matrix", route_b.coeffs(), M);
}

// Ad*_U on k0 ~= C^p against det(U) U, U sampled as words in U(p).
inline TableMatch adstar_U_table(const CatalogEntry& e, Rng& rng, int samples) {
  int p = e.p, m = e.mp.m();
  // w_k = i v(R_k) + v(I_k), last slot from (y(a)*, y(2)*)
  ComplexMatrix T = ComplexMatrix::Zero(p, m);
  T(p - 1, 0) = cplx(0, 1), T(p - 1, 1) = 1.0;
  for (int k = 0; k < p - 1; ++k) T(k, 2 + 2 * k) = cplx(0, 1), T(k, 3 + 2 * k) = 1.0;
  double w = 0;
  for (int s = 0; s < samples; ++s) {
    GroupElement a = sample_b(e.mp, rng);
    ComplexMatrix U = a.matrix.topLeftCorner(p, p);
    RealMatrix C = coad_b0(e.mp, a);
    ComplexMatrix lhs = T * C.cast<cplx>();
    ComplexMatrix rhs = U.determinant() * U * T;
    w = std::max(w, max_abs(lhs - rhs));
  }
  return {"Ad*_U = det(U) U", 1, w, ""};
}

// E -> E+(2) = C x| U(1): (v, diag(e^{i phi}, e^{-i phi})) -> (w(v), e^{2 i phi}); kernel {+-1}.
struct E2Point {
  cplx n;
  cplx u;
};

inline E2Point to_e2(const EElement& g) {
  return {cplx(g.v(1), g.v(0)), g.a.matrix(0, 0) * g.a.matrix(0, 0)};
}

inline E2Point e2_mul(const E2Point& a, const E2Point& b) { return {a.n + a.u * b.n, a.u * b.u}; }

inline double e2_map_residual(const MatchedPair& mp, Rng& rng, int samples) {
  if (mp.name() != "su11") throw std::invalid_argument("e2_map_residual: requires su11");
  double w = 0;
  for (int s = 0; s < samples; ++s) {
    EElement g = sample_e(mp, rng), h = sample_e(mp, rng);
    E2Point lhs = to_e2(e_mul(mp, g, h));
    E2Point rhs = e2_mul(to_e2(g), to_e2(h));
    w = std::max({w, std::abs(lhs.n - rhs.n), std::abs(lhs.u - rhs.u)});
    // round trip through the lift u -> e^{i theta / 2}
    E2Point x = to_e2(g);
    cplx half = std::sqrt(x.u);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = half, a(1, 1) = std::conj(half);
    RealVector v(2);
    v << x.n.imag(), x.n.real();
    double d = std::min(max_abs(a - g.a.matrix), max_abs(a + g.a.matrix));
    w = std::max({w, d, max_abs(v - g.v)});
  }
  return w;
}

// Dual brackets on e(2)* over (J*, P1*, P2*).
struct DualFamilies {
  double s = 1.0;
  double intertwiner = 0;   // rho [.,.]_1 - [rho ., rho .]_3
  double jacobi_1 = 0, jacobi_3 = 0;
  double p1p2_1 = 0;        // |[P1*, P2*]_1|
  double own_scale = 0;     // own dual bracket = own_scale * [.,.]_3
  double own_residual = 0;
};

inline LieAlgebra e2_dual_bracket(int family, double s) {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int l, double v) {
    c[(i * 3 + j) * 3 + l] += v;
    c[(j * 3 + i) * 3 + l] -= v;
  };
  const int J = 0, P1 = 1, P2 = 2;
  if (family == 1) {
    set(P1, J, P1, s);
    set(P2, J, P2, s);
  } else if (family == 3) {
    set(P1, P2, P2, 1.0);
    set(P1, J, J, 1.0);
  } else {
    throw std::invalid_argument("e2_dual_bracket: family must be 1 or 3");
  }
  return LieAlgebra(make_space({"J*", "P1*", "P2*"}), std::move(c));
}

inline DualFamilies e2_dual_families(const Cobracket& delta, double s = 1.0, double rho_sign = 1.0) {
  DualFamilies out;
  out.s = s;
  LieAlgebra b1 = e2_dual_bracket(1, s), b3 = e2_dual_bracket(3, s);
  RealMatrix rho = RealMatrix::Zero(3, 3);
  rho(1, 0) = -s * rho_sign;  // rho(J*) = -s P1*
  rho(0, 1) = 1.0;            // rho(P1*) = J*
  rho(2, 2) = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      RealVector x = RealVector::Unit(3, i), y = RealVector::Unit(3, j);
      RealVector d = rho * b1.bracket(x, y) - b3.bracket(rho * x, rho * y);
      out.intertwiner = std::max(out.intertwiner, d.cwiseAbs().maxCoeff());
    }
  out.jacobi_1 = check_jacobi(b1).max_residual;
  out.jacobi_3 = check_jacobi(b3).max_residual;
  out.p1p2_1 = b1.bracket(RealVector::Unit(3, 1), RealVector::Unit(3, 2)).cwiseAbs().maxCoeff();

  // own dual bracket, reordered from (P1, P2, J) to (J, P1, P2)
  LieAlgebra own = dual_algebra(delta);
  int perm[3] = {2, 0, 1};
  RealVector a(27), b(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) {
        a((i * 3 + j) * 3 + l) = own.c(perm[i], perm[j], perm[l]);
        b((i * 3 + j) * 3 + l) = b3.c(i, j, l);
      }
  out.own_scale = a.dot(b) / b.dot(b);
  out.own_residual = (a - out.own_scale * b).cwiseAbs().maxCoeff();
  return out;
}

// ---- conventions report ----

struct Convention {
  std::string table;
  double sign = 1;
  std::string note;
};

inline std::vector<Convention> conventions_report(const CatalogEntry& e) {
  EAlgebra ea = build_e(e.mp);
  Cobracket delta = delta_direct(ea);
  std::vector<Convention> out;
  if (e.p == 1) {
    TableMatch t = e2_relations_table(ea);
    out.push_back({"e(2) relations", static_cast<double>(t.sign), "[J,P1] = -2 P2 under <ad*(x)phi, y> = phi([y,x])"});
  }
  TableMatch sb = s_bracket_table(e);
  out.push_back({"s bracket table", static_cast<double>(sb.sign), ""});
  TableMatch dt = delta_k0_table(e, delta);
  std::ostringstream note;
  note << (dt.residual <= 1e-9 ? "matches" : "no global sign matches; residual ");
  if (dt.residual > 1e-9) note << dt.residual << ", " << dt.note << " (coefficient of y(a)*^y(2)* is 2)";
  out.push_back({"k0 cobracket table", static_cast<double>(dt.sign), note.str()});
  RMatrixRoutes routes = r_matrix(ea, delta, e.cartan, e.z);
  out.push_back({"r-matrix routes", static_cast<double>(routes.sign), "z.delta(z) against sum P_k y_i ^ y_i*"});
  out.push_back({"r-matrix display", static_cast<double>(r_table(e, routes.route_b).sign), ""});
  out.push_back({"coboundary", 1, "delta(X) = [r, Delta X] = -X.r"});
  out.push_back({"AdE on b", 1, "x -> (-ad*(Ad_a x) v, Ad_a x)"});
  out.push_back({"g' = sigma(k0) + k", static_cast<double>(build_gprime(ea).mixed_sign),
                 "sigma(x) = -x^* (antilinear); sign on [k, k0]"});
  out.push_back({"twist inner product", 0.5, "scale on ReTr for p ~= p*"});
  if (e.p == 1) {
    DualFamilies df = e2_dual_families(delta);
    out.push_back({"e(2)* dual of delta", df.own_scale, "own dual bracket = scale * [.,.]_3"});
    out.push_back({"crossed product", 1, "[t_y, f] = X'_y f, no factor i"});
  }
  return out;
}

}  // namespace plg
