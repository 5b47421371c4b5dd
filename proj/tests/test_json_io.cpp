#include "plg/catalog.hpp"
#include "plg/json_io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace plg;

TEST(JsonIo, MatrixRoundTrip) {
  RealMatrix m(2, 3);
  m << 1, -2.5, 0, 3, 1e-17, 7;
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  ComplexMatrix c(2, 2);
  c << cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-1, 1);
  EXPECT_EQ(complex_from_json(complex_to_json(c)), c);
  EXPECT_THROW(matrix_from_json(json::parse("[[1, 2], [3]]")), ImportError);
  EXPECT_THROW(matrix_from_json(json::parse("[[1, \"x\"]]")), ImportError);
  EXPECT_THROW(complex_from_json(json::parse("{\"im\": [[1]]}")), ImportError);
}

TEST(JsonIo, LieAlgebraRoundTrip) {
  CatalogEntry e = supq1(2);
  LieAlgebra back = lie_from_json(lie_to_json(e.mp.g()));
  EXPECT_EQ(back.structure(), e.mp.g().structure());
  EXPECT_EQ(back.space()->labels(), e.mp.g().space()->labels());
  EXPECT_EQ(back.pairing(), PairingKind::ImTrace);
  ASSERT_TRUE(back.has_realization());
  EXPECT_LT(realization_residual(back), 1e-12);
  EXPECT_EQ(back.dual_realization().size(), e.mp.g().dual_realization().size());
}

TEST(JsonIo, MalformedDocuments) {
  EXPECT_THROW(lie_from_json(json::parse("[]")), ImportError);
  EXPECT_THROW(lie_from_json(json::parse(R"({"labels": ["a"], "structure": 3})")), ImportError);
  EXPECT_THROW(lie_from_json(json::parse(R"({"labels": ["a", "b"], "structure": [[[0,1],[0,0]],[[0,0],[0,0]]]})")),
               ImportError);
  EXPECT_THROW(lie_from_json(json::parse(R"({"labels": ["a"], "structure": [[[0]]], "pairing": "KILLING"})")),
               ImportError);
  EXPECT_THROW(pair_from_json(json::parse(R"({"algebra": {"labels": ["a"], "structure": [[[0]]]}, "b": [3], "c": []})")),
               ImportError);
  EXPECT_THROW(read_json_file("/nonexistent/pair.json"), ImportError);
}

TEST(JsonIo, PairFromFileWithRelativeAlgebra) {
  CatalogEntry e = su11();
  std::string dir = ::testing::TempDir();
  {
    std::ofstream(dir + "plg_alg.json") << lie_to_json(e.mp.g()).dump();
    std::ofstream(dir + "plg_pair.json") << R"({"name": "mine", "algebra": "plg_alg.json", "b": [0], "c": [1, 2]})";
  }
  MatchedPair mp = pair_from_file(dir + "plg_pair.json");
  EXPECT_EQ(mp.name(), "mine");
  EXPECT_EQ(mp.k(), 1);
  EXPECT_LT(max_abs(mp.psi() - e.mp.psi()), 1e-12);
  std::remove((dir + "plg_alg.json").c_str());
  std::remove((dir + "plg_pair.json").c_str());
}

TEST(JsonIo, InconsistentSplitIsReported) {
  json doc = {{"algebra", lie_to_json(su11().mp.g())}, {"b", {0, 1}}, {"c", {2}}};
  EXPECT_THROW(pair_from_json(doc), ImportError);
}
