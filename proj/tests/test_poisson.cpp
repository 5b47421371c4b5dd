#include "plg/catalog.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace plg;

namespace {

const cplx I(0, 1);

// max over a grid of |p(phi) - f(phi)|
template <class F>
double pointwise(const TrigPoly& p, F&& f) {
  double w = 0;
  for (int j = 0; j < 64; ++j) {
    double phi = 2 * M_PI * j / 64 + 0.01;
    w = std::max(w, std::abs(p(phi) - f(phi)));
  }
  return w;
}

}  // namespace

TEST(TrigPoly, ArithmeticAgainstPointwiseValues) {
  TrigPoly a = TrigPoly::mode(2, 0.5) - TrigPoly::mode(-1, I);
  TrigPoly b = TrigPoly::constant(3.0) + TrigPoly::mode(1);
  auto fa = [&](double t) { return 0.5 * std::exp(2.0 * I * t) - I * std::exp(-I * t); };
  auto fb = [&](double t) { return 3.0 + std::exp(I * t); };
  EXPECT_LT(pointwise(a * b, [&](double t) { return fa(t) * fb(t); }), 1e-13);
  EXPECT_LT(pointwise(a.derivative(), [&](double t) { return I * std::exp(2.0 * I * t) - std::exp(-I * t); }), 1e-13);
  EXPECT_TRUE((a - a).is_zero());
}

TEST(TrigPoly, FourierFitRecoversCoefficients) {
  TrigPoly f = fourier_fit([](double t) { return std::sin(2 * t) + cplx(0, 3) * std::cos(t); });
  EXPECT_NEAR(std::abs(f.coeff(2) - cplx(0, -0.5)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f.coeff(-2) - cplx(0, 0.5)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f.coeff(1) - cplx(0, 1.5)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f.coeff(0)), 0.0, 1e-13);
}

TEST(Poisson, CircleAnchorsOfSu11) {
  CatalogEntry e = su11();
  CircleData cd = circle_data(e.mp);
  EXPECT_LT(cd.fit_residual, 1e-12);
  EXPECT_LT(pointwise(cd.anchor[0], [](double t) { return std::sin(2 * t); }), 1e-13);
  EXPECT_LT(pointwise(cd.anchor[1], [](double t) { return 1 - std::cos(2 * t); }), 1e-13);
}

TEST(Poisson, BracketsOnAffineFunctions) {
  CatalogEntry e = su11();
  CircleData cd = circle_data(e.mp);
  RealVector ya = RealVector::Unit(2, 0), y2 = RealVector::Unit(2, 1);
  EFunction f = EFunction::fn(2, TrigPoly::mode(1));
  EFunction lin = poisson_bracket(e.mp, cd, EFunction::lin(ya), EFunction::lin(y2));
  EXPECT_LT(max_abs(lin.linear - 2 * y2), 1e-13);
  EXPECT_TRUE(lin.base.is_zero());
  auto fa = poisson_bracket(e.mp, cd, EFunction::lin(ya), f).base;
  auto f2 = poisson_bracket(e.mp, cd, EFunction::lin(y2), f).base;
  EXPECT_LT(pointwise(fa, [&](double t) { return I * std::sin(2 * t) * std::exp(I * t); }), 1e-13);
  EXPECT_LT(pointwise(f2, [&](double t) { return I * (1 - std::cos(2 * t)) * std::exp(I * t); }), 1e-13);
  // antisymmetry
  auto fa_rev = poisson_bracket(e.mp, cd, f, EFunction::lin(ya)).base;
  EXPECT_LT(trig_distance(fa + fa_rev, TrigPoly()), 1e-14);
}

TEST(Poisson, E2PlusQuotientIsEven) {
  CatalogEntry e = su11();
  E2PlusTable t = e2_plus_brackets(e.mp, circle_data(e.mp));
  // theta = 2 phi: {X(a), e^{i theta}} = 2i sin(theta) e^{i theta}
  EXPECT_LT(pointwise(t.a_theta, [&](double th) { return 2.0 * I * std::sin(th) * std::exp(I * th); }), 1e-13);
  EXPECT_LT(pointwise(t.two_theta, [&](double th) { return 2.0 * I * (1 - std::cos(th)) * std::exp(I * th); }), 1e-13);
  EXPECT_THROW(halve_modes(TrigPoly::mode(1)), std::runtime_error);
}

TEST(Poisson, TwoFormulasForTheBivectorAgree) {
  for (const char* name : {"su11", "su21", "su31"}) {
    CatalogEntry e = catalog_entry(name);
    Rng rng(17);
    for (int s = 0; s < 20; ++s) {
      EElement g = sample_e(e.mp, rng);
      EXPECT_LT(max_abs(eta0(e.mp, g).coeffs() - eta_alternative(e.mp, g).coeffs()), 1e-10) << name;
      EXPECT_LT(max_abs(eta(e.mp, g).coeffs().bottomRightCorner(e.mp.k(), e.mp.k())), 1e-12) << name;
    }
    EXPECT_LT(eta(e.mp, e_identity(e.mp)).max_abs(), 1e-15) << name;
  }
}

TEST(Poisson, MultiplicativityAndItsNegativeControl) {
  CatalogEntry e = catalog_entry("su21");
  Rng rng(1);
  EXPECT_TRUE(verify_cocycle(e.mp, 50, rng).pass);
  Rng rng2(1);
  CocycleOptions bad;
  bad.eta_b_sign = -1.0;
  CheckResult r = verify_cocycle(e.mp, 50, rng2, bad);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(Poisson, ThreadedCocycleMatchesSerial) {
  CatalogEntry e = su11();
  Rng a(9), b(9);
  CocycleOptions opt;
  opt.threads = 3;
  EXPECT_EQ(verify_cocycle(e.mp, 40, a).max_residual, verify_cocycle(e.mp, 40, b, opt).max_residual);
}
