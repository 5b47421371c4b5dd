#include "plg/matched_pair.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace plg;

namespace {

const cplx I(0, 1);

ComplexMatrix m2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// su(1,1) with its dual realized by traceless upper triangular matrices
MatchedPair su11_pair() {
  LieAlgebra g = LieAlgebra::from_realization({"J", "Ya", "Y2"}, {m2(I, 0, 0, -I), m2(0, 1, 1, 0), m2(I, -I, I, -I)},
                                              PairingKind::ImTrace)
                     .with_dual_realization({m2(1, 0, 0, -1), m2(0, 1, 0, 0), m2(0, I, 0, 0)});
  return MatchedPair("su11", g, {0}, {1, 2});
}

GroupElement rotation(const MatchedPair& mp, double t) {
  return {mp.name(), m2(std::exp(I * t), 0, 0, std::exp(-I * t))};
}

}  // namespace

TEST(MatchedPair, DualBasisPairsWithComplement) {
  MatchedPair mp = su11_pair();
  ASSERT_EQ(mp.k(), 1);
  ASSERT_EQ(mp.m(), 2);
  const auto& r = mp.g().realization();
  const auto& psi = mp.psi_matrices();
  ASSERT_EQ(psi.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR((psi[i] * r[0]).trace().imag(), 0.0, 1e-12);
    for (int j = 0; j < 2; ++j) EXPECT_NEAR((psi[i] * r[1 + j]).trace().imag(), i == j ? 1.0 : 0.0, 1e-12);
  }
}

TEST(MatchedPair, AdjointOfRotationByHand) {
  MatchedPair mp = su11_pair();
  double t = 0.37, s = std::sin(2 * t), c = std::cos(2 * t);
  RealMatrix A = Ad(mp, rotation(mp, t));
  // Ad Ya = s J + c Ya - s Y2
  EXPECT_NEAR(A(0, 1), s, 1e-12);
  EXPECT_NEAR(A(1, 1), c, 1e-12);
  EXPECT_NEAR(A(2, 1), -s, 1e-12);
  EXPECT_NEAR(A(0, 0), 1.0, 1e-12);
  RealMatrix W = anchor_matrix(mp, A);
  EXPECT_NEAR(W(0, 0), s, 1e-12);
  EXPECT_LT(membership_residual(mp, A), 1e-12);
}

TEST(MatchedPair, ActionOnComplementIsAHomomorphism) {
  MatchedPair mp = su11_pair();
  GroupElement a = rotation(mp, 0.4), b = rotation(mp, -1.3);
  GroupElement ab{mp.name(), a.matrix * b.matrix};
  RealMatrix lhs = action_on_c(mp, ab);
  EXPECT_LT(max_abs(lhs - action_on_c(mp, a) * action_on_c(mp, b)), 1e-12);
}

TEST(MatchedPair, CanonicalTensorInvariance) {
  MatchedPair mp = su11_pair();
  for (double t : {0.1, 0.9, 2.5}) {
    EXPECT_LT(invariance_residual(mp, rotation(mp, t)), 1e-12);
    EXPECT_GT(invariance_residual(mp, rotation(mp, t), 1.1), 1e-3);
  }
}

TEST(MatchedPair, ElementsOutsideBAreRejected) {
  MatchedPair mp = su11_pair();
  GroupElement boost{mp.name(), m2(std::cosh(0.5), std::sinh(0.5), std::sinh(0.5), std::cosh(0.5))};
  EXPECT_THROW(action_on_c(mp, boost), std::domain_error);
  EXPECT_THROW(Ad(mp, GroupElement{"other", boost.matrix}), std::invalid_argument);
}

TEST(MatchedPair, RejectsNonSubalgebraSplit) {
  LieAlgebra g = LieAlgebra::from_realization({"J", "Ya", "Y2"}, {m2(I, 0, 0, -I), m2(0, 1, 1, 0), m2(I, -I, I, -I)},
                                              PairingKind::ImTrace);
  EXPECT_THROW(MatchedPair("bad", g, {0, 1}, {2}), std::invalid_argument);
}
