#pragma once

#include "plg/bialgebra.hpp"

namespace plg {

inline ComplexMatrix unit(int n, int i, int j, cplx v = 1.0) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = v;
  return m;
}

// Traceless upper triangular matrices with real diagonal.
inline std::vector<ComplexMatrix> gstar_matrices(int p, std::vector<std::string>* labels = nullptr) {
  int n = p + 1;
  std::vector<ComplexMatrix> mats;
  for (int k = 0; k < p; ++k) {
    mats.push_back(unit(n, k, k) - unit(n, k + 1, k + 1));
    if (labels) labels->push_back("H" + std::to_string(k + 1));
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      mats.push_back(unit(n, k, l));
      mats.push_back(unit(n, k, l, cplx(0, 1)));
      if (labels) {
        labels->push_back("E" + std::to_string(k + 1) + std::to_string(l + 1));
        labels->push_back("iE" + std::to_string(k + 1) + std::to_string(l + 1));
      }
    }
  return mats;
}

inline LieAlgebra build_gstar(int p) {
  if (p < 1) throw std::invalid_argument("build_gstar: p must be at least 1");
  std::vector<std::string> labels;
  auto mats = gstar_matrices(p, &labels);
  return LieAlgebra::from_realization(labels, mats, PairingKind::ImTrace);
}

// g_C as a real Lie algebra over (e_i, i e_i).
inline LieAlgebra complexify(const LieAlgebra& g) {
  std::vector<std::string> labels = g.space()->labels();
  std::vector<ComplexMatrix> mats = g.realization();
  for (int i = 0; i < g.dim(); ++i) {
    labels.push_back("i." + g.space()->label(i));
    mats.push_back(cplx(0, 1) * g.realization()[i]);
  }
  return LieAlgebra::from_realization(labels, mats, PairingKind::ImTrace);
}

// Antilinear conjugation fixing the compact real form.
inline ComplexMatrix sigma(const ComplexMatrix& x) { return -x.adjoint(); }

struct ManinTriple {
  LieAlgebra big;
  RealMatrix halfA, halfB;  // columns in big coordinates
  std::string nameA, nameB;
  PairingKind form = PairingKind::ImTrace;
};

inline RealMatrix coords_in(const LieAlgebra& big, const std::vector<ComplexMatrix>& mats, double tol) {
  RealMatrix H(big.dim(), static_cast<Eigen::Index>(mats.size()));
  for (size_t j = 0; j < mats.size(); ++j) {
    double res = 0;
    H.col(static_cast<Eigen::Index>(j)) = big.coords_of(mats[j], &res);
    if (res > tol) throw std::invalid_argument("ManinTriple: matrix outside the ambient algebra");
  }
  return H;
}

inline ManinTriple make_manin(const LieAlgebra& big, const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                              std::string nameA, std::string nameB, double tol = 1e-9) {
  return {big, coords_in(big, a, tol), coords_in(big, b, tol), std::move(nameA), std::move(nameB)};
}

struct ManinReport {
  double isotropy_a = 0, isotropy_b = 0;
  double complementarity = 0;  // 0 when the halves are complementary
  double smallest_singular_value = 0;
  double invariance = 0;
  double closure_a = 0, closure_b = 0;
  double nondegeneracy = 0;  // smallest singular value of the form
  bool pass = false;

  double worst() const {
    return std::max({isotropy_a, isotropy_b, complementarity, invariance, closure_a, closure_b});
  }
};

inline double closure_residual(const LieAlgebra& big, const RealMatrix& H) {
  Eigen::ColPivHouseholderQR<RealMatrix> qr(H);
  double worst = 0;
  for (int a = 0; a < H.cols(); ++a)
    for (int b = 0; b < H.cols(); ++b) {
      RealVector br = big.bracket(H.col(a), H.col(b));
      RealVector c = qr.solve(br);
      worst = std::max(worst, (H * c - br).cwiseAbs().maxCoeff());
    }
  return worst;
}

inline ManinReport check_manin(const ManinTriple& mt, double tol = 1e-9) {
  const LieAlgebra& big = mt.big;
  int n = big.dim();
  RealMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = trace_pairing(mt.form, big.realization()[i], big.realization()[j]);
  ManinReport r;
  r.isotropy_a = max_abs(mt.halfA.transpose() * G * mt.halfA);
  r.isotropy_b = max_abs(mt.halfB.transpose() * G * mt.halfB);
  RealMatrix AB(n, mt.halfA.cols() + mt.halfB.cols());
  AB << mt.halfA, mt.halfB;
  Eigen::JacobiSVD<RealMatrix> svd(AB);
  r.smallest_singular_value = svd.singularValues().minCoeff();
  if (AB.cols() != n)
    r.complementarity = std::abs(static_cast<double>(AB.cols() - n));
  else
    r.complementarity = r.smallest_singular_value > 1e-8 ? 0.0 : 1.0;
  for (int x = 0; x < n; ++x) {
    const RealMatrix& a = big.ad_basis(x);
    r.invariance = std::max(r.invariance, max_abs(a.transpose() * G + G * a));
  }
  r.closure_a = closure_residual(big, mt.halfA);
  r.closure_b = closure_residual(big, mt.halfB);
  r.nondegeneracy = Eigen::JacobiSVD<RealMatrix>(G).singularValues().minCoeff();
  r.pass = r.worst() <= tol && r.nondegeneracy > 1e-8;
  return r;
}

struct GPrime {
  LieAlgebra alg;                   // basis (sigma Psi^1..m, k_1..k_k), the order of e
  std::vector<ComplexMatrix> mats;  // realization inside g_C
  double closure = 0;
  int mixed_sign = 0;               // sign on the [k, k0] block relative to e
  double transport_residual = 0;
  double block_residual = 0;        // [k, sigma k0] leaving sigma k0
};

inline GPrime build_gprime(const EAlgebra& ea, double tol = 1e-9) {
  const MatchedPair& mp = ea.mp;
  int m = mp.m(), k = mp.k(), N = m + k;
  if (static_cast<int>(mp.psi_matrices().size()) != m)
    throw std::invalid_argument("build_gprime: pair has no matrix realization of k0");
  std::vector<ComplexMatrix> mats;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    mats.push_back(sigma(mp.psi_matrices()[i]));
    labels.push_back("s(" + mp.e_space()->label(i) + ")");
  }
  for (int j = 0; j < k; ++j) {
    mats.push_back(mp.g().matrix_of(mp.b_basis().col(j)));
    labels.push_back(mp.e_space()->label(m + j));
  }
  RealSpan span(mats);
  GPrime out{LieAlgebra::from_realization(labels, mats, PairingKind::ImTrace, 1e6), mats};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double res = 0;
      span.coords(commutator(mats[i], mats[j]), &res);
      out.closure = std::max(out.closure, res);
    }
  if (out.closure > tol) throw std::runtime_error("build_gprime: span is not closed");
  double best = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    double w = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        bool mixed = (i < m) != (j < m);
        for (int l = 0; l < N; ++l)
          w = std::max(w, std::abs(out.alg.c(i, j, l) - (mixed ? s : 1) * ea.e.c(i, j, l)));
      }
    if (w < best) best = w, out.mixed_sign = s;
  }
  out.transport_residual = best;
  for (int j = m; j < N; ++j)
    for (int i = 0; i < m; ++i)
      for (int l = m; l < N; ++l) out.block_residual = std::max(out.block_residual, std::abs(out.alg.c(j, i, l)));
  return out;
}

struct DeformResult {
  LieAlgebra alg;
  RealMatrix basis;  // columns in g coordinates: phi(psi^i) then k
  double phi_condition = 0;
};

// phi: k0 -> p with ReTr(phi(psi) y) = <psi, y> on s.
inline RealMatrix phi_images(const MatchedPair& mp, const SubspaceDecomposition& cartan, double* cond = nullptr) {
  const LieAlgebra& g = mp.g();
  const RealMatrix& P = cartan.basis("p");
  int m = mp.m();
  RealMatrix M(P.cols(), m);
  for (int j = 0; j < P.cols(); ++j)
    for (int l = 0; l < m; ++l)
      M(j, l) = trace_pairing(PairingKind::ReTrace, g.matrix_of(P.col(j)), g.matrix_of(mp.y_basis().col(l)));
  Eigen::JacobiSVD<RealMatrix> svd(M);
  const auto& sv = svd.singularValues();
  double c = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (cond) *cond = c;
  if (M.rows() != M.cols() || !(c < 1e10)) throw std::invalid_argument("phi_images: trace form degenerate on p x s");
  // row i of beta gives phi(psi^i) in the p basis; beta M = I
  RealMatrix beta = M.inverse();
  return P * beta.transpose();
}

inline DeformResult deform_bracket(const MatchedPair& mp, const SubspaceDecomposition& cartan, double sign) {
  const LieAlgebra& g = mp.g();
  int m = mp.m(), k = mp.k(), N = m + k;
  DeformResult out{g, RealMatrix(N, N)};
  RealMatrix Phi = phi_images(mp, cartan, &out.phi_condition);
  out.basis << Phi, mp.b_basis();
  RealMatrix Tinv = out.basis.inverse();
  const RealMatrix& Pk = cartan.projection("k");
  const RealMatrix& Pp = cartan.projection("p");
  std::vector<double> c(static_cast<size_t>(N) * N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      RealVector X = out.basis.col(i), Yv = out.basis.col(j);
      RealVector u = Pp * X, x = Pk * X, v = Pp * Yv, y = Pk * Yv;
      RealVector pcomp = g.bracket(x, v) - g.bracket(y, u);
      RealVector kcomp = g.bracket(x, y) + sign * g.bracket(u, v);
      RealVector res = Tinv * (Pp * pcomp + Pk * kcomp);
      for (int l = 0; l < N; ++l) c[(static_cast<size_t>(i) * N + j) * N + l] = res(l);
    }
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        size_t a = (static_cast<size_t>(i) * N + j) * N + l, b = (static_cast<size_t>(j) * N + i) * N + l;
        double v = i == j ? 0.0 : 0.5 * (c[a] - c[b]);
        c[a] = v;
        c[b] = -v;
      }
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("phi(" + mp.e_space()->label(i) + ")");
  for (int j = 0; j < k; ++j) labels.push_back(mp.e_space()->label(m + j));
  out.alg = LieAlgebra(make_space(labels), std::move(c));
  return out;
}

// Structure constants of g rewritten in another basis (columns of T).
inline double structure_distance_in_basis(const LieAlgebra& g, const RealMatrix& T, const LieAlgebra& h) {
  RealMatrix Tinv = T.inverse();
  int N = g.dim();
  double w = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      RealVector br = Tinv * g.bracket(T.col(i), T.col(j));
      for (int l = 0; l < N; ++l) w = std::max(w, std::abs(br(l) - h.c(i, j, l)));
    }
  return w;
}

inline double structure_distance(const LieAlgebra& a, const LieAlgebra& b) {
  double w = 0;
  for (size_t i = 0; i < a.structure().size(); ++i) w = std::max(w, std::abs(a.structure()[i] - b.structure()[i]));
  return w;
}

// Pairing matrix G(a, b) = ImTr(xi_a l_b).
inline RealMatrix gstar_pairing(const LieAlgebra& gstar, const std::vector<ComplexMatrix>& half) {
  int n = gstar.dim();
  RealMatrix G(n, static_cast<Eigen::Index>(half.size()));
  for (int a = 0; a < n; ++a)
    for (size_t b = 0; b < half.size(); ++b)
      G(a, static_cast<Eigen::Index>(b)) = trace_pairing(PairingKind::ImTrace, gstar.realization()[a], half[b]);
  return G;
}

// <delta(xi), X (x) Y> = <xi, [X, Y]_half>
inline Cobracket cobracket_on_gstar(const LieAlgebra& gstar, const std::vector<ComplexMatrix>& half) {
  int n = gstar.dim();
  if (static_cast<int>(half.size()) != n) throw std::invalid_argument("cobracket_on_gstar: half has wrong dimension");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("l" + std::to_string(i));
  LieAlgebra L = LieAlgebra::from_realization(labels, half, PairingKind::ImTrace);
  RealMatrix G = gstar_pairing(gstar, half);
  RealMatrix Gi = G.inverse();
  std::vector<RealMatrix> img;
  for (int a = 0; a < n; ++a) {
    RealMatrix C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += L.c(i, j, l) * G(a, l);
        C(i, j) = s;
      }
    img.push_back(Gi.transpose() * C * Gi);
  }
  return Cobracket(gstar.space(), std::move(img));
}

// <c'(xi), X (x) Y> = <xi, [P_p X, P_p Y]>
inline Cobracket c_prime(const LieAlgebra& gstar, const LieAlgebra& g, const SubspaceDecomposition& cartan) {
  int n = gstar.dim();
  RealMatrix G = gstar_pairing(gstar, g.realization());
  RealMatrix Gi = G.inverse();
  const RealMatrix& Pp = cartan.projection("p");
  std::vector<RealMatrix> img;
  for (int a = 0; a < n; ++a) {
    RealMatrix C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RealVector br = g.bracket(Pp.col(i), Pp.col(j));
        C(i, j) = trace_pairing(PairingKind::ImTrace, gstar.realization()[a], g.matrix_of(br));
      }
    img.push_back(Gi.transpose() * C * Gi);
  }
  return Cobracket(gstar.space(), std::move(img));
}

// Fully antisymmetric rank-3 coefficient arrays.
class Tensor3 {
 public:
  explicit Tensor3(int n) : n_(n), a_(static_cast<size_t>(n) * n * n, 0.0) {}
  double& operator()(int i, int j, int k) { return a_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const { return a_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  int n() const { return n_; }
  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  Tensor3& operator+=(const Tensor3& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Tensor3 operator*(double s) const {
    Tensor3 t = *this;
    for (double& v : t.a_) v *= s;
    return t;
  }

  // += coef * u ^ v ^ w
  void add_wedge(double coef, const RealVector& u, const RealVector& v, const RealVector& w) {
    if (coef == 0.0) return;
    for (int i = 0; i < n_; ++i) {
      if (u(i) == 0.0) continue;
      for (int j = 0; j < n_; ++j) {
        if (v(j) == 0.0) continue;
        for (int k = 0; k < n_; ++k) {
          if (w(k) == 0.0) continue;
          double x = coef * u(i) * v(j) * w(k);
          (*this)(i, j, k) += x;
          (*this)(j, k, i) += x;
          (*this)(k, i, j) += x;
          (*this)(j, i, k) -= x;
          (*this)(i, k, j) -= x;
          (*this)(k, j, i) -= x;
        }
      }
    }
  }

 private:
  int n_;
  std::vector<double> a_;
};

inline std::vector<std::tuple<double, int, int>> decomposables(const RealMatrix& M) {
  std::vector<std::tuple<double, int, int>> out;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = i + 1; j < M.cols(); ++j)
      if (M(i, j) != 0.0) out.emplace_back(M(i, j), i, j);
  return out;
}

inline Tensor3 schouten(const LieAlgebra& L, const RealMatrix& M1, const RealMatrix& M2) {
  int n = L.dim();
  Tensor3 T(n);
  auto e = [&](int i) { return RealVector::Unit(n, i); };
  auto br = [&](int i, int j) { return RealVector(L.ad_basis(i).col(j)); };
  for (auto [x, a, b] : decomposables(M1))
    for (auto [y, c, d] : decomposables(M2)) {
      double w = x * y;
      T.add_wedge(w, br(a, c), e(b), e(d));
      T.add_wedge(-w, br(a, d), e(b), e(c));
      T.add_wedge(-w, br(b, c), e(a), e(d));
      T.add_wedge(w, br(b, d), e(a), e(c));
    }
  return T;
}

// d(a ^ b) = delta(a) ^ b - a ^ delta(b)
inline Tensor3 d_extend(const Cobracket& delta, const RealMatrix& M) {
  int n = delta.dim();
  Tensor3 T(n);
  auto e = [&](int i) { return RealVector::Unit(n, i); };
  for (auto [x, a, b] : decomposables(M)) {
    for (auto [y, c, d] : decomposables(delta.image(a))) T.add_wedge(x * y, e(c), e(d), e(b));
    for (auto [y, c, d] : decomposables(delta.image(b))) T.add_wedge(-x * y, e(a), e(c), e(d));
  }
  return T;
}

struct TwistOptions {
  double scale = 0.5;           // inner product scale * ReTr on p
  double s_multiplier = 1.0;    // negative control
  std::uint64_t rotate_seed = 0;  // nonzero: rotate the orthonormal basis of p
  std::vector<RealVector> basis;  // optional user basis of p (g coordinates)
};

struct TwistReport {
  RealMatrix s;  // coefficient matrix over g* coordinates
  double orthonormality = 0;
  double antisymmetry = 0;
  double schouten_ss = 0;
  double ds = 0;
  double maurer_cartan = 0;  // (1/2)[s,s] + ds
  double twist = 0;          // delta_g - delta_g' - xi.s
  double support = 0;        // mass outside the p* block
  double worst() const { return std::max({antisymmetry, maurer_cartan, twist}); }
};

inline TwistReport twist_check(const LieAlgebra& gstar, const LieAlgebra& g, const SubspaceDecomposition& cartan,
                               const RealVector& z, const std::vector<ComplexMatrix>& gprime, TwistOptions opt = {},
                               double tol = 1e-9) {
  int n = g.dim();
  RealMatrix ad = g.ad_matrix(z);
  {
    RealMatrix Mp = cartan.part_coords("p") * ad * ad * cartan.basis("p");
    if (max_abs(Mp + RealMatrix::Identity(Mp.rows(), Mp.cols())) > tol)
      throw std::invalid_argument("twist_check: z is not normalized");
  }
  auto form = [&](const RealVector& a, const RealVector& b) {
    return opt.scale * trace_pairing(PairingKind::ReTrace, g.matrix_of(a), g.matrix_of(b));
  };
  RealMatrix Y;
  TwistReport rep;
  if (!opt.basis.empty()) {
    Y.resize(n, static_cast<Eigen::Index>(opt.basis.size()));
    for (size_t j = 0; j < opt.basis.size(); ++j) Y.col(static_cast<Eigen::Index>(j)) = opt.basis[j];
  } else {
    const RealMatrix& P = cartan.basis("p");
    RealMatrix Gram(P.cols(), P.cols());
    for (int i = 0; i < P.cols(); ++i)
      for (int j = 0; j < P.cols(); ++j) Gram(i, j) = form(P.col(i), P.col(j));
    Eigen::LLT<RealMatrix> llt(Gram);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("twist_check: form not positive on p");
    RealMatrix Linv = llt.matrixL().solve(RealMatrix::Identity(P.cols(), P.cols()));
    Y = P * Linv.transpose();
    if (opt.rotate_seed) {
      Rng rng(opt.rotate_seed);
      RealMatrix R(Y.cols(), Y.cols());
      for (int i = 0; i < R.rows(); ++i)
        for (int j = 0; j < R.cols(); ++j) R(i, j) = rng.uniform(-1, 1);
      Eigen::HouseholderQR<RealMatrix> qr(R);
      RealMatrix Q = qr.householderQ();
      Y = Y * Q;
    }
  }
  for (int i = 0; i < Y.cols(); ++i)
    for (int j = 0; j < Y.cols(); ++j)
      rep.orthonormality = std::max(rep.orthonormality, std::abs(form(Y.col(i), Y.col(j)) - (i == j ? 1.0 : 0.0)));
  if (rep.orthonormality > tol) throw std::invalid_argument("twist_check: basis of p is not orthonormal");
  if (max_abs(Y - cartan.projection("p") * Y) > tol) throw std::invalid_argument("twist_check: basis not in p");

  RealMatrix G = gstar_pairing(gstar, g.realization());
  const RealMatrix& Pp = cartan.projection("p");
  auto to_gstar = [&](const RealVector& u) {
    RealVector rhs(n);
    for (int X = 0; X < n; ++X) rhs(X) = form(u, Pp.col(X));
    return RealVector(G.transpose().fullPivLu().solve(rhs));
  };
  RealMatrix S = RealMatrix::Zero(n, n);
  for (int j = 0; j < Y.cols(); ++j) S += to_gstar(ad * Y.col(j)) * to_gstar(Y.col(j)).transpose();
  S *= opt.s_multiplier;
  rep.antisymmetry = max_abs(S + S.transpose());
  rep.s = Bivector(gstar.space(), S).coeffs();

  // p* block: functionals of the form <xi_u, .>, u in p
  RealMatrix Pstar(n, Y.cols());
  for (int j = 0; j < Y.cols(); ++j) Pstar.col(j) = to_gstar(Y.col(j));
  RealMatrix proj = Pstar * (Pstar.transpose() * Pstar).inverse() * Pstar.transpose();
  rep.support = max_abs(rep.s - proj * rep.s * proj.transpose());

  Cobracket dg = cobracket_on_gstar(gstar, g.realization());
  Cobracket dgp = cobracket_on_gstar(gstar, gprime);
  Tensor3 ss = schouten(gstar, rep.s, rep.s);
  Tensor3 ds = d_extend(dgp, rep.s);
  rep.schouten_ss = ss.max_abs();
  rep.ds = ds.max_abs();
  Tensor3 mc = ss * 0.5;
  mc += ds;
  rep.maurer_cartan = mc.max_abs();
  for (int a = 0; a < n; ++a) {
    RealMatrix xs = act(gstar, RealVector::Unit(n, a), rep.s);
    rep.twist = std::max(rep.twist, max_abs(dg.image(a) - dgp.image(a) - xs));
  }
  return rep;
}

}  // namespace plg
