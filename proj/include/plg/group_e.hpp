#pragma once

#include "plg/matched_pair.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace plg {

inline constexpr const char* kExpMethod = "Pade(13) scaling-and-squaring (Eigen MatrixExponential)";

inline GroupElement exp_b(const MatchedPair& mp, const RealVector& x, double t) {
  if (x.size() != mp.k()) throw std::invalid_argument("exp_b: x must have b-coordinates");
  if (!mp.g().has_realization()) throw std::invalid_argument("exp_b: missing realization");
  ComplexMatrix X = mp.g().matrix_of(mp.b_basis() * x) * cplx(t, 0);
  return {mp.name(), X.exp()};
}

inline GroupElement g_mul(const GroupElement& a, const GroupElement& b) {
  if (a.group != b.group) throw std::invalid_argument("g_mul: pair mismatch");
  return {a.group, a.matrix * b.matrix};
}

inline GroupElement g_inv(const GroupElement& a) { return {a.group, a.matrix.inverse()}; }

// Random word of at most three exponentials of b.
inline GroupElement sample_b(const MatchedPair& mp, Rng& rng) {
  int len = rng.uniform_int(1, 3);
  GroupElement a = mp.identity();
  for (int i = 0; i < len; ++i) a = g_mul(a, exp_b(mp, rng.uniform_vector(mp.k(), 1.0), 1.0));
  return a;
}

struct EElement {
  RealVector v;  // psi-coordinates of a point of b0
  GroupElement a;
};

inline EElement e_identity(const MatchedPair& mp) { return {RealVector::Zero(mp.m()), mp.identity()}; }

inline EElement sample_e(const MatchedPair& mp, Rng& rng) {
  RealVector v = rng.uniform_vector(mp.m(), 1.0);
  return {v, sample_b(mp, rng)};
}

inline EElement e_mul(const MatchedPair& mp, const EElement& g, const EElement& h) {
  require_group(mp, g.a);
  require_group(mp, h.a);
  return {g.v + coad_b0(mp, g.a) * h.v, g_mul(g.a, h.a)};
}

inline EElement e_inv(const MatchedPair& mp, const EElement& g) {
  require_group(mp, g.a);
  GroupElement ai = g_inv(g.a);
  return {-(coad_b0(mp, ai) * g.v), ai};
}

// v as a functional on g (dual coordinates)
inline RealVector b0_to_dual(const MatchedPair& mp, const RealVector& v) { return mp.psi().transpose() * v; }

// ad*(x)phi on dual coordinates
inline RealVector coad(const MatchedPair& mp, const RealVector& x, const RealVector& phi) {
  return mp.g().coad_matrix(x) * phi;
}

// Ad^E on e = b0 (+) b; columns are images of psi^1..psi^m, x_1..x_k.
inline RealMatrix AdE(const MatchedPair& mp, const EElement& g) {
  int m = mp.m(), k = mp.k();
  RealMatrix A = Ad(mp, g.a);
  RealMatrix R = RealMatrix::Zero(m + k, m + k);
  R.topLeftCorner(m, m) = coad_b0(mp, coAd(mp, g.a));
  RealVector vd = b0_to_dual(mp, g.v);
  for (int j = 0; j < k; ++j) {
    RealVector Ax = A * mp.b_basis().col(j);
    R.block(0, m + j, m, 1) = -(mp.y_basis().transpose() * coad(mp, Ax, vd));
    R.block(m, m + j, k, 1) = mp.b_coords() * Ax;
  }
  return R;
}

// A curve through the identity with velocity X = (psi, x).
inline EElement e_curve(const MatchedPair& mp, const RealVector& X, double t) {
  int m = mp.m();
  return {t * X.head(m), exp_b(mp, X.tail(mp.k()), t)};
}

// e-coordinates of the velocity at t = 0 of a curve through the identity.
inline RealVector e_velocity(const MatchedPair& mp, const std::function<EElement(double)>& curve, double h) {
  int m = mp.m(), k = mp.k();
  Eigen::Index s = mp.g().span().matrix_size();
  auto flat = [&](double t) {
    EElement c = curve(t);
    RealVector out(m + 2 * s * s);
    out.head(m) = c.v;
    out.tail(2 * s * s) = flatten(c.a.matrix);
    return out;
  };
  RealVector d = finite_diff(flat, 0.0, h);
  ComplexMatrix da(s, s);
  for (Eigen::Index i = 0; i < s * s; ++i) da.data()[i] = cplx(d(m + i), d(m + s * s + i));
  RealVector X(m + k);
  X.head(m) = d.head(m);
  X.tail(k) = mp.b_coords() * mp.g().coords_of(da);
  return X;
}

// Finite-difference oracle for Ad^E: differentiate g c(t) g^-1.
inline RealMatrix AdE_fd(const MatchedPair& mp, const EElement& g, double h) {
  int N = mp.m() + mp.k();
  EElement gi = e_inv(mp, g);
  RealMatrix R(N, N);
  for (int j = 0; j < N; ++j) {
    RealVector X = RealVector::Unit(N, j);
    R.col(j) = e_velocity(mp, [&](double t) { return e_mul(mp, e_mul(mp, g, e_curve(mp, X, t)), gi); }, h);
  }
  return R;
}

}  // namespace plg
