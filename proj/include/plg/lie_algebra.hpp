#pragma once

#include "plg/algebra_core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <optional>
#include <sstream>

namespace plg {

enum class PairingKind { None, ImTrace, ReTrace };

inline const char* pairing_name(PairingKind k) {
  switch (k) {
    case PairingKind::ImTrace: return "IM_TRACE";
    case PairingKind::ReTrace: return "RE_TRACE";
    default: return "NONE";
  }
}

inline double trace_pairing(PairingKind k, const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(ab) = sum_ij a_ij b_ji
  cplx t = (a.array() * b.transpose().array()).sum();
  switch (k) {
    case PairingKind::ImTrace: return t.imag();
    case PairingKind::ReTrace: return t.real();
    default: throw std::logic_error("trace_pairing: no pairing configured");
  }
}

inline RealVector flatten(const ComplexMatrix& m) {
  RealVector v(2 * m.size());
  Eigen::Index n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = m.data()[i].real();
    v(n + i) = m.data()[i].imag();
  }
  return v;
}


inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

// Real span of complex matrices, with least-squares re-expansion.
class RealSpan {
 public:
  RealSpan() = default;
  explicit RealSpan(std::vector<ComplexMatrix> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) throw std::invalid_argument("RealSpan: empty");
    rows_ = mats_[0].rows();
    A_.resize(2 * mats_[0].size(), static_cast<Eigen::Index>(mats_.size()));
    for (size_t i = 0; i < mats_.size(); ++i) {
      if (mats_[i].rows() != rows_ || mats_[i].cols() != rows_)
        throw std::invalid_argument("RealSpan: matrices must be square of equal size");
      A_.col(static_cast<Eigen::Index>(i)) = flatten(mats_[i]);
    }
    qr_.compute(A_);
    if (qr_.rank() != static_cast<Eigen::Index>(mats_.size()))
      throw std::invalid_argument("RealSpan: matrices are linearly dependent");
  }

  int dim() const { return static_cast<int>(mats_.size()); }
  Eigen::Index matrix_size() const { return rows_; }
  const std::vector<ComplexMatrix>& mats() const { return mats_; }

  RealVector coords(const ComplexMatrix& m, double* residual = nullptr) const {
    RealVector f = flatten(m);
    RealVector c = qr_.solve(f);
    if (residual) *residual = (A_ * c - f).cwiseAbs().maxCoeff();
    return c;
  }

  ComplexMatrix matrix(const RealVector& c) const {
    ComplexMatrix m = ComplexMatrix::Zero(rows_, rows_);
    for (int i = 0; i < dim(); ++i) m += c(i) * mats_[i];
    return m;
  }

 private:
  std::vector<ComplexMatrix> mats_;
  Eigen::Index rows_ = 0;
  RealMatrix A_;
  Eigen::ColPivHouseholderQR<RealMatrix> qr_;
};

class LieAlgebra {
 public:
  LieAlgebra(SpacePtr space, std::vector<double> structure,
             std::vector<ComplexMatrix> realization = {}, PairingKind pairing = PairingKind::None)
      : space_(std::move(space)), c_(std::move(structure)), pairing_(pairing) {
    n_ = space_->dim();
    if (c_.size() != static_cast<size_t>(n_) * n_ * n_)
      throw std::invalid_argument("LieAlgebra: structure must have dim^3 entries");
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          if (c(i, j, k) != -c(j, i, k))
            throw std::invalid_argument("LieAlgebra: structure constants not antisymmetric");
    ad_.reserve(n_);
    for (int i = 0; i < n_; ++i) {
      RealMatrix a(n_, n_);
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) a(k, j) = c(i, j, k);
      ad_.push_back(std::move(a));
    }
    if (!realization.empty()) {
      if (static_cast<int>(realization.size()) != n_)
        throw std::invalid_argument("LieAlgebra: realization needs one matrix per basis element");
      span_ = RealSpan(std::move(realization));
    }
  }

  // Structure constants re-expanded from matrix commutators.
  static LieAlgebra from_realization(std::vector<std::string> labels, std::vector<ComplexMatrix> mats,
                                     PairingKind pairing = PairingKind::None, double tol = 1e-9) {
    RealSpan span(mats);
    int n = span.dim();
    std::vector<double> c(static_cast<size_t>(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double res = 0;
        RealVector v = span.coords(commutator(mats[i], mats[j]), &res);
        if (res > tol) throw std::invalid_argument("LieAlgebra: realization not closed under commutator");
        for (int k = 0; k < n; ++k) {
          double x = std::abs(v(k)) < 1e-14 ? 0.0 : v(k);
          c[(static_cast<size_t>(i) * n + j) * n + k] = x;
          c[(static_cast<size_t>(j) * n + i) * n + k] = -x;
        }
      }
    return LieAlgebra(make_space(std::move(labels)), std::move(c), std::move(mats), pairing);
  }

  int dim() const { return n_; }
  const SpacePtr& space() const { return space_; }
  double c(int i, int j, int k) const { return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  const std::vector<double>& structure() const { return c_; }
  const RealMatrix& ad_basis(int i) const { return ad_.at(i); }

  RealMatrix ad_matrix(const RealVector& x) const {
    check_len(x);
    RealMatrix a = RealMatrix::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
      if (x(i) != 0.0) a += x(i) * ad_[i];
    return a;
  }
  RealMatrix coad_matrix(const RealVector& x) const { return -ad_matrix(x).transpose(); }

  RealVector bracket(const RealVector& x, const RealVector& y) const {
    check_len(y);
    return ad_matrix(x) * y;
  }

  RealMatrix killing() const {
    RealMatrix k(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) k(i, j) = (ad_[i] * ad_[j]).trace();
    return k;
  }

  bool has_realization() const { return span_.has_value(); }
  const RealSpan& span() const {
    if (!span_) throw std::logic_error("LieAlgebra: missing realization");
    return *span_;
  }
  const std::vector<ComplexMatrix>& realization() const { return span().mats(); }
  ComplexMatrix matrix_of(const RealVector& x) const {
    check_len(x);
    return span().matrix(x);
  }
  RealVector coords_of(const ComplexMatrix& m, double* residual = nullptr) const {
    return span().coords(m, residual);
  }

  PairingKind pairing() const { return pairing_; }

  // Optional matrix realization of the dual space (catalog data).
  const std::vector<ComplexMatrix>& dual_realization() const { return dual_mats_; }
  LieAlgebra with_dual_realization(std::vector<ComplexMatrix> mats) const {
    if (static_cast<int>(mats.size()) != n_)
      throw std::invalid_argument("LieAlgebra: dual realization needs dim matrices");
    LieAlgebra out = *this;
    out.dual_mats_ = std::move(mats);
    return out;
  }

  // Dual coordinates of a matrix functional through the configured pairing.
  RealVector dual_coords_of(const ComplexMatrix& m) const {
    const auto& r = realization();
    RealVector v(n_);
    for (int i = 0; i < n_; ++i) v(i) = trace_pairing(pairing_, m, r[i]);
    return v;
  }

  // Same algebra with a perturbed structure constant (antisymmetry kept).
  LieAlgebra perturbed(int i, int j, int k, double eps) const {
    std::vector<double> c = c_;
    c[(static_cast<size_t>(i) * n_ + j) * n_ + k] += eps;
    c[(static_cast<size_t>(j) * n_ + i) * n_ + k] -= eps;
    LieAlgebra out(space_, std::move(c), span_ ? span_->mats() : std::vector<ComplexMatrix>{}, pairing_);
    out.dual_mats_ = dual_mats_;
    return out;
  }

 private:
  void check_len(const RealVector& x) const {
    if (x.size() != n_) throw std::invalid_argument("LieAlgebra: space mismatch");
  }

  SpacePtr space_;
  int n_ = 0;
  std::vector<double> c_;
  std::vector<RealMatrix> ad_;
  std::optional<RealSpan> span_;
  PairingKind pairing_;
  std::vector<ComplexMatrix> dual_mats_;
};

inline Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y) {
  require_same(L.space(), x.space(), "bracket");
  require_same(L.space(), y.space(), "bracket");
  return Vec(L.space(), L.bracket(x.coords(), y.coords()));
}

inline RealMatrix ad_matrix(const LieAlgebra& L, const Vec& x) {
  require_same(L.space(), x.space(), "ad_matrix");
  return L.ad_matrix(x.coords());
}

inline RealMatrix coad_matrix(const LieAlgebra& L, const Vec& x) {
  require_same(L.space(), x.space(), "coad_matrix");
  return L.coad_matrix(x.coords());
}

inline double invariant_pairing(const LieAlgebra& L, const Vec& x, const Vec& y) {
  if (!L.has_realization()) throw std::invalid_argument("invariant_pairing: missing realization");
  if (L.pairing() == PairingKind::None) throw std::invalid_argument("invariant_pairing: no pairing");
  return trace_pairing(L.pairing(), L.matrix_of(x.coords()), L.matrix_of(y.coords()));
}

struct JacobiReport {
  double max_residual = 0;
  bool pass = false;
};

inline JacobiReport check_jacobi(const LieAlgebra& L, double tol = 1e-9) {
  int n = L.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double s = 0;
          for (int l = 0; l < n; ++l)
            s += L.c(i, j, l) * L.c(l, k, m) + L.c(j, k, l) * L.c(l, i, m) + L.c(k, i, l) * L.c(l, j, m);
          worst = std::max(worst, std::abs(s));
        }
  return {worst, worst <= tol};
}

// Max deviation between stored constants and those of the matrix realization.
inline double realization_residual(const LieAlgebra& L) {
  const auto& r = L.realization();
  int n = L.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double res = 0;
      RealVector v = L.coords_of(commutator(r[i], r[j]), &res);
      worst = std::max(worst, res);
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(v(k) - L.c(i, j, k)));
    }
  return worst;
}

struct SubspacePart {
  std::string name;
  RealMatrix basis;  // parent coordinates, one column per vector
};

class SubspaceDecomposition {
 public:
  SubspaceDecomposition() = default;
  SubspaceDecomposition(const LieAlgebra& parent, std::vector<SubspacePart> parts, double tol = 1e-9)
      : parts_(std::move(parts)), n_(parent.dim()) {
    int total = 0;
    for (const auto& p : parts_) {
      if (p.basis.rows() != n_) throw std::invalid_argument("SubspaceDecomposition: wrong vector length");
      total += static_cast<int>(p.basis.cols());
    }
    if (total != n_) throw std::invalid_argument("SubspaceDecomposition: dimensions do not add up");
    RealMatrix T(n_, n_);
    int col = 0;
    for (const auto& p : parts_) {
      T.middleCols(col, p.basis.cols()) = p.basis;
      col += static_cast<int>(p.basis.cols());
    }
    Eigen::JacobiSVD<RealMatrix> svd(T);
    const auto& sv = svd.singularValues();
    condition_ = sv(n_ - 1) > 0 ? sv(0) / sv(n_ - 1) : std::numeric_limits<double>::infinity();
    if (!(sv(n_ - 1) > 1e-12 * sv(0)))
      throw std::invalid_argument("SubspaceDecomposition: parts are dependent (condition number " +
                                  std::to_string(condition_) + ")");
    RealMatrix Tinv = T.inverse();
    col = 0;
    RealMatrix sum = RealMatrix::Zero(n_, n_);
    for (const auto& p : parts_) {
      int d = static_cast<int>(p.basis.cols());
      coords_.push_back(Tinv.middleRows(col, d));
      projections_.push_back(p.basis * coords_.back());
      sum += projections_.back();
      col += d;
    }
    RealMatrix corr = (RealMatrix::Identity(n_, n_) - sum) / static_cast<double>(parts_.size());
    for (auto& P : projections_) P += corr;
    for (size_t i = 0; i < parts_.size(); ++i) {
      double worst = 0;
      const RealMatrix& B = parts_[i].basis;
      for (int a = 0; a < B.cols(); ++a)
        for (int b = 0; b < B.cols(); ++b) {
          RealVector br = parent.bracket(B.col(a), B.col(b));
          worst = std::max(worst, (br - projections_[i] * br).cwiseAbs().maxCoeff());
        }
      closure_.push_back(worst);
      subalgebra_.push_back(worst <= tol);
    }
  }

  int size() const { return static_cast<int>(parts_.size()); }
  const SubspacePart& part(int i) const { return parts_.at(i); }
  int index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (parts_[i].name == name) return i;
    throw std::out_of_range("SubspaceDecomposition: no part " + name);
  }
  const RealMatrix& basis(const std::string& name) const { return parts_[index(name)].basis; }
  const RealMatrix& projection(int i) const { return projections_.at(i); }
  const RealMatrix& projection(const std::string& name) const { return projections_[index(name)]; }
  // Coordinates of the projection in the part's own basis.
  const RealMatrix& part_coords(const std::string& name) const { return coords_[index(name)]; }
  double condition_number() const { return condition_; }
  bool is_subalgebra(const std::string& name) const { return subalgebra_[index(name)]; }
  double closure_residual(const std::string& name) const { return closure_[index(name)]; }

  double projector_residual() const {
    double worst = 0;
    RealMatrix sum = RealMatrix::Zero(n_, n_);
    for (int i = 0; i < size(); ++i) {
      sum += projections_[i];
      for (int j = 0; j < size(); ++j) {
        RealMatrix pp = projections_[i] * projections_[j];
        if (i == j) pp -= projections_[i];
        worst = std::max(worst, max_abs(pp));
      }
    }
    return std::max(worst, max_abs(sum - RealMatrix::Identity(n_, n_)));
  }

 private:
  std::vector<SubspacePart> parts_;
  int n_ = 0;
  std::vector<RealMatrix> coords_;
  std::vector<RealMatrix> projections_;
  std::vector<double> closure_;
  std::vector<bool> subalgebra_;
  double condition_ = 0;
};

// Basis of the annihilator of the column span of S, in dual coordinates.
inline RealMatrix annihilator(const RealMatrix& S, int n) {
  if (S.cols() == 0) return RealMatrix::Identity(n, n);
  Eigen::JacobiSVD<RealMatrix> svd(S.transpose(), Eigen::ComputeFullV);
  int r = 0;
  const auto& sv = svd.singularValues();
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * std::max(1.0, sv(0))) ++r;
  return svd.matrixV().rightCols(n - r);
}

struct DualBasis {
  RealMatrix psi;  // one row per dual vector, in dual coordinates of the parent
  double condition = 0;
  std::vector<ComplexMatrix> matrices;  // filled when the algebra carries a dual realization
};

inline ComplexMatrix dual_matrix(const LieAlgebra& L, const RealVector& phi) {
  const auto& W = L.dual_realization();
  const auto& R = L.realization();
  int n = L.dim();
  RealMatrix G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G(a, b) = trace_pairing(L.pairing(), W[a], R[b]);
  RealVector alpha = G.transpose().fullPivLu().solve(phi);
  ComplexMatrix m = ComplexMatrix::Zero(W[0].rows(), W[0].cols());
  for (int a = 0; a < n; ++a) m += alpha(a) * W[a];
  return m;
}

inline DualBasis dual_basis(const LieAlgebra& L, const RealMatrix& annihilated, const RealMatrix& dualized,
                            double tol = 1e-9) {
  int n = L.dim();
  RealMatrix N = annihilator(annihilated, n);
  if (N.cols() != dualized.cols())
    throw std::invalid_argument("dual_basis: annihilator and dualized subspace differ in dimension");
  RealMatrix M = N.transpose() * dualized;
  Eigen::JacobiSVD<RealMatrix> svd(M);
  const auto& sv = svd.singularValues();
  DualBasis out;
  out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    std::ostringstream msg;
    msg << "dual_basis: singular pairing matrix (condition number " << out.condition << ")";
    throw std::invalid_argument(msg.str());
  }
  out.psi = M.inverse() * N.transpose();
  double res = max_abs(out.psi * dualized - RealMatrix::Identity(M.rows(), M.cols()));
  if (annihilated.cols()) res = std::max(res, max_abs(out.psi * annihilated));
  if (res > tol) throw std::runtime_error("dual_basis: pairing residual above tolerance");
  if (!L.dual_realization().empty())
    for (int i = 0; i < out.psi.rows(); ++i) out.matrices.push_back(dual_matrix(L, out.psi.row(i).transpose()));
  return out;
}

inline RealMatrix columns(int n, const std::vector<int>& idx) {
  RealMatrix m = RealMatrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) m(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

}  // namespace plg
