#pragma once

#include "plg/check_result.hpp"
#include "plg/matched_pair.hpp"

#include <filesystem>
#include <fstream>

namespace plg {

struct ImportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline json complex_to_json(const ComplexMatrix& m) {
  return {{"re", matrix_to_json(m.real())}, {"im", matrix_to_json(m.imag())}};
}

inline RealMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ImportError("expected a non-empty array of rows");
  Eigen::Index r = static_cast<Eigen::Index>(j.size()), c = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != c) throw ImportError("ragged matrix");
    for (Eigen::Index k = 0; k < c; ++k) {
      if (!j[i][k].is_number()) throw ImportError("matrix entry is not a number");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

inline ComplexMatrix complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw ImportError("complex matrix needs 're' (and optional 'im')");
  RealMatrix re = matrix_from_json(j["re"]);
  RealMatrix im = j.contains("im") ? matrix_from_json(j["im"]) : RealMatrix::Zero(re.rows(), re.cols());
  if (im.rows() != re.rows() || im.cols() != re.cols()) throw ImportError("re/im shapes differ");
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

inline PairingKind pairing_from_name(const std::string& s) {
  if (s == "IM_TRACE") return PairingKind::ImTrace;
  if (s == "RE_TRACE") return PairingKind::ReTrace;
  if (s == "NONE") return PairingKind::None;
  throw ImportError("unknown pairing '" + s + "'");
}

inline json lie_to_json(const LieAlgebra& L) {
  int n = L.dim();
  json structure = json::array();
  for (int i = 0; i < n; ++i) {
    json a = json::array();
    for (int j = 0; j < n; ++j) {
      json b = json::array();
      for (int k = 0; k < n; ++k) b.push_back(L.c(i, j, k));
      a.push_back(std::move(b));
    }
    structure.push_back(std::move(a));
  }
  json out = {{"labels", L.space()->labels()}, {"structure", std::move(structure)}};
  if (L.has_realization()) {
    json r = json::array();
    for (const auto& m : L.realization()) r.push_back(complex_to_json(m));
    out["realization"] = std::move(r);
  }
  out["pairing"] = pairing_name(L.pairing());
  if (!L.dual_realization().empty()) {
    json r = json::array();
    for (const auto& m : L.dual_realization()) r.push_back(complex_to_json(m));
    out["dual_realization"] = std::move(r);
  }
  return out;
}

inline LieAlgebra lie_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ImportError("Lie algebra document must be an object");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    int n = static_cast<int>(labels.size());
    if (n == 0) throw ImportError("empty basis");
    const json& s = j.at("structure");
    if (!s.is_array() || static_cast<int>(s.size()) != n) throw ImportError("structure must be dim x dim x dim");
    std::vector<double> c(static_cast<size_t>(n) * n * n);
    for (int a = 0; a < n; ++a) {
      if (!s[a].is_array() || static_cast<int>(s[a].size()) != n) throw ImportError("structure must be dim x dim x dim");
      for (int b = 0; b < n; ++b) {
        if (!s[a][b].is_array() || static_cast<int>(s[a][b].size()) != n)
          throw ImportError("structure must be dim x dim x dim");
        for (int k = 0; k < n; ++k) c[(static_cast<size_t>(a) * n + b) * n + k] = s[a][b][k].get<double>();
      }
    }
    std::vector<ComplexMatrix> real;
    if (j.contains("realization"))
      for (const auto& m : j["realization"]) real.push_back(complex_from_json(m));
    PairingKind pk = pairing_from_name(j.value("pairing", std::string("NONE")));
    LieAlgebra L(make_space(labels), std::move(c), std::move(real), pk);
    if (j.contains("dual_realization")) {
      std::vector<ComplexMatrix> d;
      for (const auto& m : j["dual_realization"]) d.push_back(complex_from_json(m));
      L = L.with_dual_realization(std::move(d));
    }
    return L;
  } catch (const json::exception& e) {
    throw ImportError(std::string("malformed Lie algebra document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ImportError(e.what());
  }
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ImportError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ImportError(path.string() + ": " + e.what());
  }
}

// {name, algebra: <document or path>, b: [indices], c: [indices]}
inline MatchedPair pair_from_json(const json& j, const std::filesystem::path& base = {}) {
  try {
    const json& a = j.at("algebra");
    LieAlgebra L = a.is_string() ? lie_from_json(read_json_file(base / a.get<std::string>())) : lie_from_json(a);
    auto b = j.at("b").get<std::vector<int>>();
    auto c = j.at("c").get<std::vector<int>>();
    for (int i : b)
      if (i < 0 || i >= L.dim()) throw ImportError("b index out of range");
    for (int i : c)
      if (i < 0 || i >= L.dim()) throw ImportError("c index out of range");
    return MatchedPair(j.value("name", std::string("imported")), L, b, c);
  } catch (const json::exception& e) {
    throw ImportError(std::string("malformed matched pair document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ImportError(e.what());
  }
}

inline MatchedPair pair_from_file(const std::filesystem::path& path) {
  return pair_from_json(read_json_file(path), path.parent_path());
}

}  // namespace plg
