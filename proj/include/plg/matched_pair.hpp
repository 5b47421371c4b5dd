#pragma once

#include "plg/lie_algebra.hpp"

namespace plg {

struct GroupElement {
  std::string group;  // name of the parent pair
  ComplexMatrix matrix;
};

// Adjoint matrix of a x a^-1 re-expanded in the algebra basis.
inline RealMatrix Ad(const LieAlgebra& g, const ComplexMatrix& a, double tol = 1e-9) {
  ComplexMatrix ai = a.inverse();
  const auto& r = g.realization();
  int n = g.dim();
  RealMatrix A(n, n);
  double scale = 1.0 + max_abs(a) * max_abs(ai);
  for (int i = 0; i < n; ++i) {
    double res = 0;
    A.col(i) = g.coords_of(a * r[i] * ai, &res);
    if (res > tol * scale) throw std::domain_error("Ad: element does not normalize the realization span");
  }
  return A;
}

inline RealMatrix coAd(const LieAlgebra& g, const ComplexMatrix& a, double tol = 1e-9) {
  return Ad(g, a.inverse(), tol).transpose();
}

class MatchedPair {
 public:
  MatchedPair(std::string name, LieAlgebra g, const std::vector<int>& b_idx, const std::vector<int>& c_idx,
              Tolerances tol = {})
      : MatchedPair(std::move(name), g, columns(g.dim(), b_idx), columns(g.dim(), c_idx), tol) {}

  MatchedPair(std::string name, LieAlgebra g, RealMatrix b_basis, RealMatrix y_basis, Tolerances tol = {})
      : name_(std::move(name)), g_(std::move(g)), tol_(tol) {
    decomp_ = SubspaceDecomposition(g_, {{"b", b_basis}, {"c", y_basis}}, tol.algebraic);
    if (!decomp_.is_subalgebra("b"))
      throw std::invalid_argument("MatchedPair: b is not a subalgebra (closure residual " +
                                  std::to_string(decomp_.closure_residual("b")) + ")");
    if (!decomp_.is_subalgebra("c"))
      throw std::invalid_argument("MatchedPair: c is not a subalgebra (closure residual " +
                                  std::to_string(decomp_.closure_residual("c")) + ")");
    dual_ = dual_basis(g_, b_basis, y_basis, tol.algebraic);
    std::vector<std::string> bl, cl, b0l, el;
    for (int j = 0; j < k(); ++j) bl.push_back(vector_label(b_basis.col(j)));
    for (int j = 0; j < m(); ++j) cl.push_back(vector_label(y_basis.col(j)));
    for (const auto& s : cl) b0l.push_back(s + "*");
    el = b0l;
    el.insert(el.end(), bl.begin(), bl.end());
    b_space_ = make_space(bl);
    c_space_ = make_space(cl);
    b0_space_ = make_space(b0l);
    e_space_ = make_space(el);
  }

  const std::string& name() const { return name_; }
  const LieAlgebra& g() const { return g_; }
  const SubspaceDecomposition& decomp() const { return decomp_; }
  const Tolerances& tol() const { return tol_; }
  int n() const { return g_.dim(); }
  int k() const { return static_cast<int>(decomp_.basis("b").cols()); }
  int m() const { return static_cast<int>(decomp_.basis("c").cols()); }

  const RealMatrix& b_basis() const { return decomp_.basis("b"); }
  const RealMatrix& y_basis() const { return decomp_.basis("c"); }
  // P_b and P_c as maps into b- and c-coordinates.
  const RealMatrix& b_coords() const { return decomp_.part_coords("b"); }
  const RealMatrix& c_coords() const { return decomp_.part_coords("c"); }
  const RealMatrix& psi() const { return dual_.psi; }
  const std::vector<ComplexMatrix>& psi_matrices() const { return dual_.matrices; }
  double dual_condition() const { return dual_.condition; }

  const SpacePtr& b_space() const { return b_space_; }
  const SpacePtr& c_space() const { return c_space_; }
  const SpacePtr& b0_space() const { return b0_space_; }
  const SpacePtr& e_space() const { return e_space_; }

  GroupElement identity() const {
    Eigen::Index s = g_.span().matrix_size();
    return {name_, ComplexMatrix::Identity(s, s)};
  }

  // bracket of c restricted to c, in y-coordinates
  RealVector c_bracket(const RealVector& u, const RealVector& w) const {
    return c_coords() * g_.bracket(y_basis() * u, y_basis() * w);
  }

 private:
  std::string vector_label(const RealVector& v) const {
    int nz = 0, at = -1;
    for (int i = 0; i < v.size(); ++i)
      if (v(i) != 0.0) ++nz, at = i;
    if (nz == 1 && v(at) == 1.0) return g_.space()->label(at);
    std::ostringstream s;
    s << "v" << (label_counter_++);
    return s.str();
  }

  std::string name_;
  LieAlgebra g_;
  Tolerances tol_;
  SubspaceDecomposition decomp_;
  DualBasis dual_;
  SpacePtr b_space_, c_space_, b0_space_, e_space_;
  mutable int label_counter_ = 1;
};

inline void require_group(const MatchedPair& mp, const GroupElement& a) {
  if (a.group != mp.name()) throw std::invalid_argument("group element belongs to another pair");
}

inline RealMatrix Ad(const MatchedPair& mp, const GroupElement& a) {
  require_group(mp, a);
  return Ad(mp.g(), a.matrix, mp.tol().algebraic);
}

inline RealMatrix coAd(const MatchedPair& mp, const GroupElement& a) {
  require_group(mp, a);
  return coAd(mp.g(), a.matrix, mp.tol().algebraic);
}

// max |P_c Ad(a) b_j|; zero iff Ad(a) preserves b
inline double membership_residual(const MatchedPair& mp, const RealMatrix& AdA) {
  return max_abs(mp.c_coords() * AdA * mp.b_basis());
}

inline RealMatrix action_on_c(const MatchedPair& mp, const RealMatrix& AdA) {
  double res = membership_residual(mp, AdA);
  if (res > mp.tol().algebraic * (1.0 + max_abs(AdA))) throw std::domain_error("action_on_c: element not in B");
  return mp.c_coords() * AdA * mp.y_basis();
}

inline RealMatrix action_on_c(const MatchedPair& mp, const GroupElement& a) { return action_on_c(mp, Ad(mp, a)); }

// Ad*_a on b0 in psi-coordinates.
inline RealMatrix coad_b0(const MatchedPair& mp, const RealMatrix& coAdA) {
  return mp.y_basis().transpose() * coAdA * mp.psi().transpose();
}

inline RealMatrix coad_b0(const MatchedPair& mp, const GroupElement& a) { return coad_b0(mp, coAd(mp, a)); }

// Columns P_b Ad_a y_i in b-coordinates.
inline RealMatrix anchor_matrix(const MatchedPair& mp, const RealMatrix& AdA) {
  return mp.b_coords() * AdA * mp.y_basis();
}

inline Vec anchor(const MatchedPair& mp, const Vec& y, const GroupElement& a) {
  require_same(mp.c_space(), y.space(), "anchor");
  RealMatrix A = Ad(mp, a);
  action_on_c(mp, A);
  return Vec(mp.b_space(), anchor_matrix(mp, A) * y.coords());
}

// sum_i psi^i (x) y_i, coefficients in (psi, y) coordinates
inline RealMatrix canonical_tensor(const MatchedPair& mp) {
  return mp.psi() * mp.y_basis();
}

// The same tensor in full g* (x) g coordinates; basis independent.
inline RealMatrix canonical_tensor_full(const RealMatrix& psi, const RealMatrix& y_basis) {
  return psi.transpose() * y_basis.transpose();
}

inline double invariance_residual(const MatchedPair& mp, const GroupElement& a, double psi_scale = 1.0) {
  RealMatrix A = Ad(mp, a);
  RealMatrix M = psi_scale * coad_b0(mp, coAd(mp, a));
  RealMatrix C = action_on_c(mp, A);
  // sum_i (M e_i)(C e_i)^T against the identity coefficient matrix
  return max_abs(M * C.transpose() - canonical_tensor(mp));
}

}  // namespace plg
