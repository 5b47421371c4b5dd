#pragma once

#include "plg/poisson.hpp"

namespace plg {

struct EAlgebra {
  MatchedPair mp;
  LieAlgebra e;
  int m() const { return mp.m(); }
  int k() const { return mp.k(); }
  int dim() const { return e.dim(); }
};

// e = b0 x| b over (psi^1..psi^m, x_1..x_k).
inline EAlgebra build_e(const MatchedPair& mp) {
  int m = mp.m(), k = mp.k(), N = m + k;
  std::vector<double> c(static_cast<size_t>(N) * N * N, 0.0);
  auto at = [&](int i, int j, int l) -> double& { return c[(static_cast<size_t>(i) * N + j) * N + l]; };
  const RealMatrix& B = mp.b_basis();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      RealVector br = mp.b_coords() * mp.g().bracket(B.col(i), B.col(j));
      for (int l = 0; l < k; ++l) at(m + i, m + j, m + l) = br(l);
    }
    RealMatrix co = mp.g().coad_matrix(B.col(i));
    for (int j = 0; j < m; ++j) {
      RealVector img = mp.y_basis().transpose() * (co * mp.psi().row(j).transpose());
      for (int l = 0; l < m; ++l) {
        at(m + i, j, l) = img(l);
        at(j, m + i, l) = -img(l);
      }
    }
  }
  LieAlgebra e(mp.e_space(), std::move(c));
  auto jr = check_jacobi(e, mp.tol().algebraic);
  if (!jr.pass) throw std::runtime_error("build_e: Jacobi fails; inconsistent matched pair");
  return {mp, std::move(e)};
}

class Cobracket {
 public:
  Cobracket(SpacePtr space, std::vector<RealMatrix> images) : space_(std::move(space)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != space_->dim())
      throw std::invalid_argument("Cobracket: one image per basis vector");
    for (auto& M : images_) M = Bivector(space_, M).coeffs();
  }
  const SpacePtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  const RealMatrix& image(int i) const { return images_.at(i); }
  Bivector of(int i) const { return Bivector(space_, images_.at(i)); }
  RealMatrix apply(const RealVector& X) const {
    RealMatrix M = RealMatrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (X(i) != 0.0) M += X(i) * images_[i];
    return M;
  }

 private:
  SpacePtr space_;
  std::vector<RealMatrix> images_;
};

inline double cobracket_distance(const Cobracket& a, const Cobracket& b) {
  double w = 0;
  for (int i = 0; i < a.dim(); ++i) w = std::max(w, max_abs(a.image(i) - b.image(i)));
  return w;
}

struct DeltaOptions {
  double delta_b_sign = 1.0;
};

inline Cobracket delta_direct(const EAlgebra& ea, DeltaOptions opt = {}) {
  const MatchedPair& mp = ea.mp;
  int m = mp.m(), k = mp.k(), N = m + k;
  const RealMatrix& Y = mp.y_basis();
  std::vector<RealMatrix> img(N, RealMatrix::Zero(N, N));
  for (int l = 0; l < m; ++l) {
    RealMatrix Q(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) Q(i, j) = mp.psi().row(l).dot(mp.g().bracket(Y.col(i), Y.col(j)));
    img[l].topLeftCorner(m, m) = Q;
  }
  for (int j = 0; j < k; ++j) {
    RealMatrix M = RealMatrix::Zero(N, N);
    for (int i = 0; i < m; ++i) {
      RealVector x = RealVector::Zero(N);
      x.tail(k) = mp.b_coords() * mp.g().bracket(Y.col(i), mp.b_basis().col(j));
      M += wedge_coeffs(x, RealVector::Unit(N, i));
    }
    img[m + j] = opt.delta_b_sign * M;
  }
  return Cobracket(mp.e_space(), std::move(img));
}

// Linearization of eta at the identity along e_curve.
inline Cobracket delta_from_eta(const MatchedPair& mp, double h = 1e-4) {
  int N = mp.m() + mp.k();
  std::vector<RealMatrix> img;
  for (int i = 0; i < N; ++i) {
    RealVector X = RealVector::Unit(N, i);
    img.push_back(finite_diff([&](double t) { return eta(mp, e_curve(mp, X, t)).coeffs(); }, 0.0, h));
  }
  return Cobracket(mp.e_space(), std::move(img));
}

// X.M for M in e (x) e
inline RealMatrix act(const LieAlgebra& e, const RealVector& X, const RealMatrix& M) {
  RealMatrix a = e.ad_matrix(X);
  return a * M + M * a.transpose();
}

struct CobracketAxioms {
  double co_jacobi = 0;
  double cocycle = 0;
  double dual_jacobi = 0;
  double landing = 0;  // block structure: b0 -> L^2 b0, b -> b ^ b0
};

inline LieAlgebra dual_algebra(const Cobracket& d) {
  int N = d.dim();
  std::vector<double> c(static_cast<size_t>(N) * N * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int x = 0; x < N; ++x) c[(static_cast<size_t>(a) * N + b) * N + x] = d.image(x)(a, b);
  std::vector<std::string> labels;
  for (const auto& l : d.space()->labels()) labels.push_back(l + "*");
  return LieAlgebra(make_space(labels), std::move(c));
}

inline CobracketAxioms check_cobracket_axioms(const LieAlgebra& e, const Cobracket& d, int m = -1) {
  int N = e.dim();
  CobracketAxioms out;
  for (int x = 0; x < N; ++x) {
    const RealMatrix& C = d.image(x);
    // T(c,d,b) = sum_a C_ab (delta e_a)_cd
    std::vector<double> T(static_cast<size_t>(N) * N * N, 0.0);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (C(a, b) == 0.0) continue;
        const RealMatrix& D = d.image(a);
        for (int c = 0; c < N; ++c)
          for (int dd = 0; dd < N; ++dd) T[(static_cast<size_t>(c) * N + dd) * N + b] += C(a, b) * D(c, dd);
      }
    auto t = [&](int i, int j, int l) { return T[(static_cast<size_t>(i) * N + j) * N + l]; };
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l)
          out.co_jacobi = std::max(out.co_jacobi, std::abs(t(i, j, l) + t(j, l, i) + t(l, i, j)));
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      RealVector X = RealVector::Unit(N, x), Y = RealVector::Unit(N, y);
      RealMatrix lhs = d.apply(e.bracket(X, Y));
      RealMatrix rhs = act(e, X, d.image(y)) - act(e, Y, d.image(x));
      out.cocycle = std::max(out.cocycle, max_abs(lhs - rhs));
    }
  out.dual_jacobi = check_jacobi(dual_algebra(d)).max_residual;
  if (m >= 0) {
    int k = N - m;
    for (int i = 0; i < m; ++i) {
      const RealMatrix& D = d.image(i);
      out.landing = std::max({out.landing, max_abs(D.topRightCorner(m, k)), max_abs(D.bottomRightCorner(k, k))});
    }
    for (int j = m; j < N; ++j) {
      const RealMatrix& D = d.image(j);
      out.landing = std::max({out.landing, max_abs(D.topLeftCorner(m, m)), max_abs(D.bottomRightCorner(k, k))});
    }
  }
  return out;
}

// Rescales a central element of k so that ad(z)^2 = -1 on p.
inline RealVector normalize_z(const LieAlgebra& g, const SubspaceDecomposition& cartan, const RealVector& z0,
                              double tol = 1e-9) {
  RealMatrix ad = g.ad_matrix(z0);
  double central = max_abs(ad * cartan.basis("k"));
  if (central > tol) throw std::invalid_argument("normalize_z: z is not central in k");
  if (max_abs(z0 - cartan.projection("k") * z0) > tol) throw std::invalid_argument("normalize_z: z is not in k");
  RealMatrix M = cartan.part_coords("p") * ad * ad * cartan.basis("p");
  double lambda = M.trace() / static_cast<double>(M.rows());
  double spread = max_abs(M - lambda * RealMatrix::Identity(M.rows(), M.cols()));
  if (!(lambda < 0) || spread > tol * std::max(1.0, std::abs(lambda)))
    throw std::invalid_argument("normalize_z: ad(z)^2 is not a negative constant on p");
  return z0 / std::sqrt(-lambda);
}

struct RMatrixRoutes {
  Bivector route_a;  // z.delta(z)
  Bivector route_b;  // sum_i P^C_k y_i ^ psi^i
  int sign = 0;      // route_a = sign * route_b
  double difference = 0;
  double block_residual = 0;  // mass outside the k ^ k0 block
};

inline RMatrixRoutes r_matrix(const EAlgebra& ea, const Cobracket& delta, const SubspaceDecomposition& cartan,
                              const RealVector& z, double tol = 1e-9) {
  const MatchedPair& mp = ea.mp;
  int m = mp.m(), k = mp.k(), N = m + k;
  const LieAlgebra& g = mp.g();
  RealMatrix ad = g.ad_matrix(z);
  RealMatrix Mp = cartan.part_coords("p") * ad * ad * cartan.basis("p");
  if (max_abs(ad * cartan.basis("k")) > tol) throw std::invalid_argument("r_matrix: z is not central");
  if (max_abs(Mp + RealMatrix::Identity(Mp.rows(), Mp.cols())) > tol)
    throw std::invalid_argument("r_matrix: z is not normalized");
  if (max_abs(z - mp.decomp().projection("b") * z) > tol) throw std::invalid_argument("r_matrix: z is not in b");

  RealVector Z = RealVector::Zero(N);
  Z.tail(k) = mp.b_coords() * z;
  RealMatrix ra = act(ea.e, Z, delta.apply(Z));

  RealMatrix rb = RealMatrix::Zero(N, N);
  const RealMatrix& Pk = cartan.projection("k");
  for (int i = 0; i < m; ++i) {
    RealVector ky = Pk * mp.y_basis().col(i);
    if (max_abs(ky - mp.decomp().projection("b") * ky) > tol)
      throw std::invalid_argument("r_matrix: Cartan k differs from b");
    RealVector x = RealVector::Zero(N);
    x.tail(k) = mp.b_coords() * ky;
    rb += wedge_coeffs(x, RealVector::Unit(N, i));
  }
  RMatrixRoutes out{Bivector(mp.e_space(), ra), Bivector(mp.e_space(), rb)};
  double plus = max_abs(ra - rb), minus = max_abs(ra + rb);
  out.sign = plus <= minus ? 1 : -1;
  out.difference = std::min(plus, minus);
  out.block_residual = std::max(max_abs(ra.topLeftCorner(m, m)), max_abs(ra.bottomRightCorner(k, k)));
  return out;
}

inline CheckResult check_coboundary(const EAlgebra& ea, const Cobracket& delta, const Bivector& r, double tol) {
  int N = ea.dim();
  double worst = 0;
  for (int x = 0; x < N; ++x) {
    RealVector X = RealVector::Unit(N, x);
    // [r, Delta X] = -X.r
    worst = std::max(worst, max_abs(delta.image(x) + act(ea.e, X, r.coeffs())));
  }
  return make_result("coboundary", N, worst, tol, {{"pair", ea.mp.name()}});
}

struct UniquenessOptions {
  bool widen = false;         // add k0 (x) k0 to the candidate space
  bool drop_b0_rows = false;  // test only against b directions
};

struct UniquenessReport {
  int kernel_dim = 0;
  int candidates = 0;
  double smallest_singular_value = 0;
  double threshold = 1e-8;
};

inline UniquenessReport check_r_uniqueness(const EAlgebra& ea, UniquenessOptions opt = {}, double threshold = 1e-8) {
  int m = ea.m(), N = ea.dim();
  std::vector<std::pair<int, int>> cand;
  for (int a = m; a < N; ++a)
    for (int b = 0; b < m; ++b) {
      cand.emplace_back(a, b);
      cand.emplace_back(b, a);
    }
  if (opt.widen)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) cand.emplace_back(a, b);
  int first = opt.drop_b0_rows ? m : 0;
  int rows = (N - first) * N * N;
  RealMatrix A(rows, static_cast<Eigen::Index>(cand.size()));
  for (size_t c = 0; c < cand.size(); ++c) {
    RealMatrix T = RealMatrix::Zero(N, N);
    T(cand[c].first, cand[c].second) = 1.0;
    for (int x = first; x < N; ++x) {
      RealMatrix XT = act(ea.e, RealVector::Unit(N, x), T);
      A.block((x - first) * N * N, static_cast<Eigen::Index>(c), N * N, 1) =
          Eigen::Map<const RealVector>(XT.data(), N * N);
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(A);
  const auto& sv = svd.singularValues();
  UniquenessReport out;
  out.candidates = static_cast<int>(cand.size());
  out.threshold = threshold;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) >= threshold) ++rank;
  out.kernel_dim = out.candidates - rank;
  out.smallest_singular_value = static_cast<int>(sv.size()) < out.candidates ? 0.0 : sv(sv.size() - 1);
  return out;
}

}  // namespace plg
