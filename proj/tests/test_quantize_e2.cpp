#include "plg/catalog.hpp"
#include "plg/quantize_e2.hpp"

#include <gtest/gtest.h>

using namespace plg;

namespace {

const cplx I(0, 1);

// sin 2phi and 1 - cos 2phi as trig polynomials; [y_a, y_2] = 2 y_2
CrossedAlgebra hand_algebra(double sign = 1.0) {
  TrigPoly sin2 = TrigPoly::mode(2, -0.5 * I) + TrigPoly::mode(-2, 0.5 * I);
  TrigPoly one_minus_cos2 = TrigPoly::constant(1.0) - TrigPoly::mode(2, 0.5) - TrigPoly::mode(-2, 0.5);
  return CrossedAlgebra(sin2, one_minus_cos2, 0.0, 2.0, sign);
}

PureElement mono(int a, int b, int n, cplx c = 1.0) { return PureElement({a, b, n}, c); }

double dist(const PureElement& x, const PureElement& y) { return max_coeff(x - y); }

}  // namespace

TEST(QuantizeE2, LaurentPolynomialsInH) {
  HPoly a = HPoly::monomial(1, 2.0) + HPoly::monomial(-1, I);
  HPoly b = HPoly::monomial(0, 1.0) - HPoly::monomial(2, 1.0);
  HPoly ab = a * b;
  // (2h + i/h)(1 - h^2) = i/h + (2 - i)h - 2h^3
  EXPECT_EQ(ab.coeff(-1), I);
  EXPECT_EQ(ab.coeff(1), cplx(2.0, -1.0));
  EXPECT_EQ(ab.coeff(3), cplx(-2.0));
  EXPECT_EQ(ab.coeffs().size(), 3u);
  EXPECT_EQ(ab.min_power(), -1);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.shifted(1).coeff(2), cplx(2.0));
}

TEST(QuantizeE2, AnchorsFromThePairMatchHandValues) {
  CatalogEntry e = su11();
  CrossedAlgebra alg = CrossedAlgebra::from_pair(e.mp, circle_data(e.mp));
  CrossedAlgebra ref = hand_algebra();
  EXPECT_LT(trig_distance(alg.anchor(0), ref.anchor(0)), 1e-13);
  EXPECT_LT(trig_distance(alg.anchor(1), ref.anchor(1)), 1e-13);
  EXPECT_NEAR(alg.alpha(), 0.0, 1e-13);
  EXPECT_NEAR(alg.beta(), 2.0, 1e-13);
}

TEST(QuantizeE2, DefiningRelations) {
  CrossedAlgebra alg = hand_algebra();
  PureElement ta = mono(1, 0, 0), t2 = mono(0, 1, 0);
  EXPECT_LT(dist(alg.mul(ta, t2) - alg.mul(t2, ta), t2 * 2.0), 1e-14);
  // [t_a, e^{i phi}] = sin 2phi * i e^{i phi} = (e^{3i phi} - e^{-i phi}) / 2
  PureElement f = mono(0, 0, 1);
  EXPECT_LT(dist(alg.mul(ta, f) - alg.mul(f, ta), mono(0, 0, 3, 0.5) - mono(0, 0, -1, 0.5)), 1e-14);
  // [t_2, e^{i phi}] = (1 - cos 2phi) i e^{i phi}
  PureElement want = mono(0, 0, 1, I) - mono(0, 0, 3, 0.5 * I) - mono(0, 0, -1, 0.5 * I);
  EXPECT_LT(dist(alg.mul(t2, f) - alg.mul(f, t2), want), 1e-14);
  EXPECT_LT(dist(alg.mul(mono(0, 0, 2), mono(0, 0, -5)), mono(0, 0, -3)), 1e-15);
}

TEST(QuantizeE2, MultiplicationIsAssociative) {
  CrossedAlgebra alg = hand_algebra();
  Rng rng(4);
  for (int s = 0; s < 20; ++s) {
    PureElement A = random_pure(rng), B = random_pure(rng), C = random_pure(rng);
    EXPECT_LT(dist(alg.mul(alg.mul(A, B), C), alg.mul(A, alg.mul(B, C))), 1e-10);
  }
}

TEST(QuantizeE2, QuantizationMapRoundTrip) {
  SymElement S = SymElement({2, 1, -1}, 3.0) + SymElement({0, 0, 4}, I);
  CrossedElement q = Qh(S);
  EXPECT_EQ(q.coeff({2, 1, -1}).coeff(3), cplx(3.0));
  EXPECT_EQ(q.coeff({0, 0, 4}).coeff(0), I);
  auto back = Qh_inverse(q);
  for (const auto& [k, c] : back.terms()) {
    EXPECT_EQ(c.min_power(), 0);
    EXPECT_EQ(c.coeff(0), S.coeff(k));
  }
}

TEST(QuantizeE2, PoissonBracketOnSymbols) {
  CrossedAlgebra alg = hand_algebra();
  SymElement ya({1, 0, 0}, 1.0), y2({0, 1, 0}, 1.0), f({0, 0, 1}, 1.0);
  EXPECT_LT(max_coeff(poisson_sym(alg, ya, y2) - y2 * 2.0), 1e-15);
  EXPECT_LT(max_coeff(poisson_sym(alg, ya, f) - (SymElement({0, 0, 3}, 0.5) - SymElement({0, 0, -1}, 0.5))), 1e-15);
  // Jacobi on a few mixed elements
  std::vector<SymElement> xs = {ya + f, sym_mul(y2, f) + ya * 2.0, sym_mul(ya, ya) - SymElement({0, 0, -2}, I)};
  auto pb = [&](const SymElement& a, const SymElement& b) { return poisson_sym(alg, a, b); };
  SymElement jac = pb(xs[0], pb(xs[1], xs[2])) + pb(xs[1], pb(xs[2], xs[0])) + pb(xs[2], pb(xs[0], xs[1]));
  EXPECT_LT(max_coeff(jac), 1e-12);
}

TEST(QuantizeE2, SemiclassicalLimit) {
  CrossedAlgebra alg = hand_algebra();
  // [h^2 t_a^2, h t_2]/h = h^2 (4 t_a t_2 - 4 t_2), and {y_a^2, y_2} = 4 y_a y_2
  auto d = semiclassical_defect(alg, {2, 0, 0}, {0, 1, 0});
  ASSERT_EQ(d.terms().size(), 1u);
  HPoly c = d.coeff({0, 1, 0});
  EXPECT_EQ(c.coeff(1), cplx(-4.0));
  EXPECT_EQ(c.coeffs().size(), 1u);
  SemiclassicalReport r = verify_semiclassical(alg, 2, 2);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.pairs_with_higher_order, 0);
  EXPECT_FALSE(verify_semiclassical(hand_algebra(-1.0), 2, 2).pass);
}

TEST(QuantizeE2, CoproductWithForwardAction) {
  CatalogEntry e = su11();
  CircleData cd = circle_data(e.mp);
  CrossedAlgebra alg = CrossedAlgebra::from_pair(e.mp, cd);
  Coproduct D(alg, cd, ActionChoice::Forward);
  Rng rng(2);
  CoproductReport r = check_coproduct(alg, D, rng, 10);
  EXPECT_LT(r.coassociativity, 1e-9);
  EXPECT_LT(r.homomorphism, 1e-9);
  // group-like functions
  CrossedTensor<2> df = D(mono(0, 0, 3));
  ASSERT_EQ(df.terms().size(), 1u);
}

TEST(QuantizeE2, CoproductWithInverseActionIsNotCoassociative) {
  CatalogEntry e = su11();
  CircleData cd = circle_data(e.mp);
  CrossedAlgebra alg = CrossedAlgebra::from_pair(e.mp, cd);
  Coproduct D(alg, cd, ActionChoice::Inverse);
  Rng rng(2);
  CoproductReport r = check_coproduct(alg, D, rng, 5);
  EXPECT_GT(std::max(r.coassociativity, r.homomorphism), 1e-3);
}
