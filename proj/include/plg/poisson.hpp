#pragma once

#include "plg/check_result.hpp"
#include "plg/group_e.hpp"
#include "plg/trig_poly.hpp"

#include <thread>

namespace plg {

struct EtaValue {
  EElement g;
  Bivector bivector;
};

inline Bivector eta0(const MatchedPair& mp, const EElement& g) {
  int m = mp.m(), N = m + mp.k();
  RealMatrix A = Ad(mp, g.a);
  RealMatrix U = coad_b0(mp, coAd(mp, g.a));
  RealVector vd = b0_to_dual(mp, g.v);
  const RealMatrix& Y = mp.y_basis();
  RealMatrix Q(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Q(i, j) = vd.dot(A * mp.g().bracket(Y.col(i), Y.col(j)));
  // (1/2) sum_ij Q_ij u_i ^ u_j = U Q U^T
  RealMatrix M = RealMatrix::Zero(N, N);
  M.topLeftCorner(m, m) = U * Q * U.transpose();
  return Bivector(mp.e_space(), M);
}

inline Bivector eta_b(const MatchedPair& mp, const EElement& g) {
  int m = mp.m(), k = mp.k(), N = m + k;
  RealMatrix A = Ad(mp, g.a);
  RealMatrix U = coad_b0(mp, coAd(mp, g.a));
  RealMatrix W = anchor_matrix(mp, A);
  RealMatrix M = RealMatrix::Zero(N, N);
  for (int i = 0; i < m; ++i) {
    RealVector u = RealVector::Zero(N), w = RealVector::Zero(N);
    u.head(m) = U.col(i);
    w.tail(k) = W.col(i);
    M += wedge_coeffs(u, w);
  }
  return Bivector(mp.e_space(), M);
}

inline Bivector eta(const MatchedPair& mp, const EElement& g, double eta_b_sign = 1.0) {
  return eta0(mp, g) + eta_b(mp, g) * eta_b_sign;
}

inline Bivector eta_alternative(const MatchedPair& mp, const EElement& g) {
  int m = mp.m(), k = mp.k(), N = m + k;
  RealMatrix A = Ad(mp, g.a);
  RealMatrix U = coad_b0(mp, coAd(mp, g.a));
  RealMatrix W = anchor_matrix(mp, A);
  RealVector vd = b0_to_dual(mp, g.v);
  const RealMatrix& Y = mp.y_basis();
  RealMatrix M = RealMatrix::Zero(N, N);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double q = vd.dot(mp.g().bracket(Y.col(i), Y.col(j)));
      M += 0.5 * q * wedge_coeffs(RealVector::Unit(N, i), RealVector::Unit(N, j));
    }
  for (int i = 0; i < m; ++i) {
    RealVector u = RealVector::Zero(N), z = RealVector::Zero(N);
    u.head(m) = U.col(i);
    z.head(m) = Y.transpose() * coad(mp, mp.b_basis() * W.col(i), vd);
    M -= wedge_coeffs(u, z);
  }
  return Bivector(mp.e_space(), M);
}

inline double input_magnitude(const EElement& g) {
  return std::max(g.v.size() ? g.v.cwiseAbs().maxCoeff() : 0.0, max_abs(g.a.matrix));
}

struct CocycleOptions {
  double eta_b_sign = 1.0;
  int threads = 1;
};

// Runs f(i) for i in [0, n) over a few workers and keeps per-index results.
template <class F>
std::vector<double> parallel_residuals(int n, int threads, F&& f) {
  std::vector<double> out(n, 0.0);
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) out[i] = f(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

// Residuals are scaled by 1 + max input magnitude.
inline CheckResult verify_cocycle(const MatchedPair& mp, int samples, Rng& rng, CocycleOptions opt = {}) {
  if (samples < 1) throw std::invalid_argument("verify_cocycle: samples must be positive");
  std::vector<std::pair<EElement, EElement>> pairs;
  for (int i = 0; i < samples; ++i) {
    EElement g = sample_e(mp, rng);
    EElement h = sample_e(mp, rng);
    pairs.emplace_back(std::move(g), std::move(h));
  }
  auto res = parallel_residuals(samples, opt.threads, [&](int i) {
    const auto& [g, h] = pairs[i];
    RealMatrix Ag = AdE(mp, g);
    RealMatrix lhs = eta(mp, e_mul(mp, g, h), opt.eta_b_sign).coeffs();
    RealMatrix rhs = eta(mp, g, opt.eta_b_sign).coeffs() + Ag * eta(mp, h, opt.eta_b_sign).coeffs() * Ag.transpose();
    return max_abs(lhs - rhs) / (1.0 + std::max(input_magnitude(g), input_magnitude(h)));
  });
  double worst = *std::max_element(res.begin(), res.end());
  json d = {{"pair", mp.name()}, {"seed", rng.seed()}, {"scaling", "residual / (1 + max input magnitude)"}};
  if (opt.eta_b_sign != 1.0) d["corruption"] = "eta_b_sign";
  return make_result("eta_cocycle", samples, worst, mp.tol().algebraic, d);
}

// Circle data for pairs with B = U(1): a(phi) = exp(phi x_1), 2 pi periodic.
struct CircleData {
  std::vector<TrigPoly> anchor;              // b-coefficient of P_b Ad_{a(phi)} y_i
  std::vector<std::vector<TrigPoly>> action;  // entries of P_c Ad_{a(phi)} on c
  double fit_residual = 0;
};

inline CircleData circle_data(const MatchedPair& mp, int N = 16) {
  if (mp.k() != 1) throw std::invalid_argument("circle_data: B must be one-dimensional");
  RealVector gen = RealVector::Ones(1);
  GroupElement full = exp_b(mp, gen, 2 * M_PI);
  if (max_abs(full.matrix - mp.identity().matrix) > 1e-9)
    throw std::invalid_argument("circle_data: generator is not 2 pi periodic");
  int m = mp.m();
  std::vector<RealMatrix> W(N), C(N);
  auto sample = [&](double phi, RealMatrix& w, RealMatrix& c) {
    RealMatrix A = Ad(mp, exp_b(mp, gen, phi));
    w = anchor_matrix(mp, A);
    c = action_on_c(mp, A);
  };
  for (int j = 0; j < N; ++j) sample(2 * M_PI * j / N, W[j], C[j]);
  auto fit = [&](auto get) {
    std::vector<cplx> s(N);
    for (int j = 0; j < N; ++j) s[j] = get(j);
    return fourier_from_samples(s);
  };
  CircleData out;
  out.action.assign(m, std::vector<TrigPoly>(m));
  for (int i = 0; i < m; ++i) {
    out.anchor.push_back(fit([&](int j) { return W[j](0, i); }));
    for (int l = 0; l < m; ++l) out.action[i][l] = fit([&](int j) { return C[j](i, l); });
  }
  for (double phi : {0.1234, 1.7, 2.9, 4.4, 5.95}) {
    RealMatrix w, c;
    sample(phi, w, c);
    for (int i = 0; i < m; ++i) {
      out.fit_residual = std::max(out.fit_residual, std::abs(out.anchor[i](phi) - w(0, i)));
      for (int l = 0; l < m; ++l)
        out.fit_residual = std::max(out.fit_residual, std::abs(out.action[i][l](phi) - c(i, l)));
    }
  }
  if (out.fit_residual > 1e-9) throw std::runtime_error("circle_data: anchor is not a low-degree trig polynomial");
  return out;
}

// Affine function y~ + pi* f on E: fibrewise linear part plus a pullback from B = U(1).
struct EFunction {
  RealVector linear;  // y-coordinates in c
  TrigPoly base;

  static EFunction lin(const RealVector& y) { return {y, {}}; }
  static EFunction fn(int m, TrigPoly f) { return {RealVector::Zero(m), std::move(f)}; }
  EFunction operator+(const EFunction& o) const { return {linear + o.linear, base + o.base}; }
  EFunction operator-(const EFunction& o) const { return {linear - o.linear, base - o.base}; }
  EFunction operator*(double s) const { return {linear * s, base * cplx(s)}; }
};

inline double efunction_distance(const EFunction& a, const EFunction& b) {
  double l = (a.linear - b.linear).size() ? (a.linear - b.linear).cwiseAbs().maxCoeff() : 0.0;
  return std::max(l, trig_distance(a.base, b.base));
}

// X'_y f = (anchor coefficient of y) * f'
inline TrigPoly anchor_derivative(const CircleData& cd, const RealVector& y, const TrigPoly& f) {
  TrigPoly c;
  for (int i = 0; i < y.size(); ++i)
    if (y(i) != 0.0) c += cd.anchor[i] * cplx(y(i));
  return c * f.derivative();
}

inline EFunction poisson_bracket(const MatchedPair& mp, const CircleData& cd, const EFunction& f1, const EFunction& f2) {
  EFunction out;
  out.linear = mp.c_bracket(f1.linear, f2.linear);
  out.base = anchor_derivative(cd, f1.linear, f2.base) - anchor_derivative(cd, f2.linear, f1.base);
  return out;
}

struct E2PlusTable {
  TrigPoly a_theta;    // {X~(a), e^{i theta}}
  TrigPoly two_theta;  // {X~(2), e^{i theta}}
  RealVector a_two;    // {X~(a), X~(2)} in y-coordinates
  TrigPoly v1_theta;   // {V^1, e^{i theta}} with V^1 = -X~(a)
  TrigPoly v2_theta;   // {V^2, e^{i theta}} with V^2 = X~(2)
  RealVector v1_v2;    // {V^1, V^2}, in (V^1, V^2) coordinates
};

// Reads e^{2 i phi} as e^{i theta}; only even modes may occur.
inline TrigPoly halve_modes(const TrigPoly& p) {
  TrigPoly q;
  for (const auto& [n, c] : p.coeffs()) {
    if (n % 2 != 0) throw std::runtime_error("halve_modes: odd mode does not descend to the quotient");
    q += TrigPoly::mode(n / 2, c);
  }
  return q;
}

inline E2PlusTable e2_plus_brackets(const MatchedPair& mp, const CircleData& cd) {
  if (mp.name() != "su11") throw std::invalid_argument("e2_plus_brackets: requires the su11 pair");
  int m = mp.m();
  RealVector ya = RealVector::Unit(m, 0), y2 = RealVector::Unit(m, 1);
  EFunction theta = EFunction::fn(m, TrigPoly::mode(2));
  E2PlusTable t;
  t.a_theta = halve_modes(poisson_bracket(mp, cd, EFunction::lin(ya), theta).base);
  t.two_theta = halve_modes(poisson_bracket(mp, cd, EFunction::lin(y2), theta).base);
  t.a_two = poisson_bracket(mp, cd, EFunction::lin(ya), EFunction::lin(y2)).linear;
  t.v1_theta = halve_modes(poisson_bracket(mp, cd, EFunction::lin(-ya), theta).base);
  t.v2_theta = halve_modes(poisson_bracket(mp, cd, EFunction::lin(y2), theta).base);
  RealVector br = poisson_bracket(mp, cd, EFunction::lin(-ya), EFunction::lin(y2)).linear;
  // back to (V^1, V^2) = (-y(a), y(2)) coordinates
  t.v1_v2 = RealVector(2);
  t.v1_v2 << -br(0), br(1);
  return t;
}

}  // namespace plg
