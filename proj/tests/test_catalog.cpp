#include "plg/catalog.hpp"

#include <gtest/gtest.h>

using namespace plg;

TEST(Catalog, NamesAndDimensions) {
  auto names = catalog_names();
  ASSERT_EQ(names.size(), 4u);
  for (int p = 1; p <= 4; ++p) {
    CatalogEntry e = catalog_entry(names[p - 1]);
    EXPECT_EQ(e.p, p);
    EXPECT_EQ(e.mp.n(), (p + 1) * (p + 1) - 1);
    EXPECT_EQ(e.mp.k(), p * p);
    EXPECT_EQ(e.mp.m(), 2 * p);
  }
  EXPECT_THROW(catalog_entry("sl2"), std::out_of_range);
  EXPECT_THROW(supq1(0), std::invalid_argument);
  EXPECT_THROW(supq1(kMaxCatalogP + 1), std::invalid_argument);
}

TEST(Catalog, EntriesAreInternallyConsistent) {
  for (int p = 1; p <= 3; ++p) {
    CatalogEntry e = supq1(p);
    EntryValidation v = validate_entry(e);
    EXPECT_LT(v.worst(), 1e-9) << p;
    EXPECT_LT(e.iwasawa.projector_residual(), 1e-12) << p;
    EXPECT_TRUE(e.iwasawa.is_subalgebra("n")) << p;
    EXPECT_TRUE(e.cartan.is_subalgebra("k")) << p;
    EXPECT_FALSE(e.cartan.is_subalgebra("p")) << p;
  }
}

TEST(Catalog, BracketTableOfTheComplement) {
  for (int p = 1; p <= 3; ++p) {
    TableMatch t = s_bracket_table(supq1(p));
    EXPECT_EQ(t.sign, 1) << p;
    EXPECT_LT(t.residual, 1e-9) << p;
  }
}

TEST(Catalog, DisplayedDualBasis) {
  for (int p = 1; p <= 3; ++p) EXPECT_LT(dual_basis_table(supq1(p)).residual, 1e-12) << p;
}

TEST(Catalog, CobracketOnAnnihilator) {
  // delta(psi)(y_i, y_j) = psi([y_i, y_j]); with [y(a), y(2)] = 2 y(2), [y(R)k, y(I)k] = 2 y(2)
  CatalogEntry e = supq1(3);
  Cobracket d = delta_direct(build_e(e.mp));
  int N = d.dim();
  auto w = [&](int a, int b) { return wedge_coeffs(RealVector::Unit(N, a), RealVector::Unit(N, b)); };
  RealMatrix want = 2 * w(0, 1) + 2 * w(2, 3) + 2 * w(4, 5);
  EXPECT_LT(max_abs(d.image(1) - want), 1e-12);
  EXPECT_LT(max_abs(d.image(2) - w(0, 2)), 1e-12);
  EXPECT_LT(max_abs(d.image(3) - w(0, 3)), 1e-12);
  EXPECT_LT(max_abs(d.image(0)), 1e-12);
  // only the y(a)*^y(2)* coefficient of delta(y(2)*) departs from the displayed table
  TableMatch t = delta_k0_table(e, d);
  EXPECT_NEAR(t.residual, 1.0, 1e-12);
  EXPECT_NE(t.note.find("y(2)*"), std::string::npos);
}

TEST(Catalog, RMatrixDisplay) {
  for (int p = 1; p <= 3; ++p) {
    CatalogEntry e = supq1(p);
    EAlgebra ea = build_e(e.mp);
    RMatrixRoutes r = r_matrix(ea, delta_direct(ea), e.cartan, e.z);
    TableMatch t = r_table(e, r.route_b);
    EXPECT_LT(t.residual, 1e-12) << p;
    EXPECT_EQ(t.sign, 1) << p;
  }
}

TEST(Catalog, CoadjointActionOfTheCompactFactor) {
  for (int p = 2; p <= 3; ++p) {
    Rng rng(21);
    EXPECT_LT(adstar_U_table(supq1(p), rng, 20).residual, 1e-9) << p;
  }
}

TEST(Catalog, EuclideanGroupQuotient) {
  CatalogEntry e = su11();
  Rng rng(8);
  EXPECT_LT(e2_map_residual(e.mp, rng, 50), 1e-10);
  EXPECT_THROW(e2_map_residual(supq1(2).mp, rng, 1), std::invalid_argument);
  EXPECT_LT(e2_relations_table(build_e(e.mp)).residual, 1e-12);
  EXPECT_EQ(e2_relations_table(build_e(e.mp)).sign, -1);
}

TEST(Catalog, DualFamiliesOfE2) {
  CatalogEntry e = su11();
  Cobracket d = delta_direct(build_e(e.mp));
  for (double s : {1.0, 0.5, -2.0}) {
    DualFamilies f = e2_dual_families(d, s);
    EXPECT_LT(f.intertwiner, 1e-12) << s;
    EXPECT_LT(f.jacobi_1, 1e-12) << s;
    EXPECT_LT(f.jacobi_3, 1e-12) << s;
    EXPECT_LT(f.p1p2_1, 1e-12) << s;
  }
  DualFamilies f = e2_dual_families(d);
  EXPECT_NEAR(f.own_scale, 2.0, 1e-12);
  EXPECT_LT(f.own_residual, 1e-12);
  EXPECT_GT(e2_dual_families(d, 1.0, -1.0).intertwiner, 1e-3);
}

TEST(Catalog, ConventionsReport) {
  auto c = conventions_report(su11());
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.front().table, "e(2) relations");
  EXPECT_EQ(c.front().sign, -1);
  auto c2 = conventions_report(supq1(2));
  for (const auto& x : c2) EXPECT_NE(x.table, "e(2) relations");
}
