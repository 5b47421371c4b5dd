#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plg {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline constexpr const char* kVersion = "0.3.0";

struct Tolerances {
  double algebraic = 1e-9;
  double fd = 1e-6;
  double fd_step = 1e-4;
  double svd_threshold = 1e-8;
};

class BasedSpace {
 public:
  explicit BasedSpace(std::vector<std::string> labels, bool dual = false)
      : labels_(std::move(labels)), dual_(dual) {
    if (labels_.empty()) throw std::invalid_argument("BasedSpace: empty basis");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
      throw std::invalid_argument("BasedSpace: duplicate labels");
  }

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }
  bool is_dual() const { return dual_; }

  int index_of(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
      if (labels_[i] == name) return i;
    throw std::out_of_range("BasedSpace: no basis element " + name);
  }

  bool same_as(const BasedSpace& o) const {
    return dual_ == o.dual_ && labels_ == o.labels_;
  }

 private:
  std::vector<std::string> labels_;
  bool dual_;
};

using SpacePtr = std::shared_ptr<const BasedSpace>;

inline SpacePtr make_space(std::vector<std::string> labels) {
  return std::make_shared<const BasedSpace>(std::move(labels));
}

inline SpacePtr dual_space(const SpacePtr& s) {
  return std::make_shared<const BasedSpace>(s->labels(), !s->is_dual());
}

inline void require_same(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (a != b && !a->same_as(*b))
    throw std::invalid_argument(std::string(what) + ": space mismatch");
}

class Vec {
 public:
  Vec(SpacePtr space, RealVector coords) : space_(std::move(space)), coords_(std::move(coords)) {
    if (coords_.size() != space_->dim()) throw std::invalid_argument("Vec: wrong length");
  }

  static Vec zero(SpacePtr space) {
    int n = space->dim();
    return Vec(std::move(space), RealVector::Zero(n));
  }
  static Vec basis(SpacePtr space, int i) {
    Vec v = zero(std::move(space));
    v.coords_(i) = 1.0;
    return v;
  }

  const SpacePtr& space() const { return space_; }
  const RealVector& coords() const { return coords_; }
  double operator[](int i) const { return coords_(i); }
  int dim() const { return static_cast<int>(coords_.size()); }

  Vec operator+(const Vec& o) const {
    require_same(space_, o.space_, "Vec+");
    return Vec(space_, coords_ + o.coords_);
  }
  Vec operator-(const Vec& o) const {
    require_same(space_, o.space_, "Vec-");
    return Vec(space_, coords_ - o.coords_);
  }
  Vec operator*(double s) const { return Vec(space_, coords_ * s); }

 private:
  SpacePtr space_;
  RealVector coords_;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

class Tensor2 {
 public:
  Tensor2(SpacePtr space, RealMatrix coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != space_->dim() || coeffs_.cols() != space_->dim())
      throw std::invalid_argument("Tensor2: wrong shape");
  }
  const SpacePtr& space() const { return space_; }
  const RealMatrix& coeffs() const { return coeffs_; }

 private:
  SpacePtr space_;
  RealMatrix coeffs_;
};

// Stored antisymmetric; the constructor antisymmetrizes its input.
class Bivector {
 public:
  Bivector(SpacePtr space, const RealMatrix& a) : space_(std::move(space)) {
    if (a.rows() != space_->dim() || a.cols() != space_->dim())
      throw std::invalid_argument("Bivector: wrong shape");
    coeffs_ = (a - a.transpose()) * 0.5;
  }
  static Bivector zero(SpacePtr space) {
    int n = space->dim();
    return Bivector(std::move(space), RealMatrix::Zero(n, n));
  }

  const SpacePtr& space() const { return space_; }
  const RealMatrix& coeffs() const { return coeffs_; }
  double max_abs() const { return coeffs_.cwiseAbs().maxCoeff(); }

  Bivector operator+(const Bivector& o) const {
    require_same(space_, o.space_, "Bivector+");
    return Bivector(space_, coeffs_ + o.coeffs_);
  }
  Bivector operator-(const Bivector& o) const {
    require_same(space_, o.space_, "Bivector-");
    return Bivector(space_, coeffs_ - o.coeffs_);
  }
  Bivector operator*(double s) const { return Bivector(space_, coeffs_ * s); }

 private:
  SpacePtr space_;
  RealMatrix coeffs_;
};

inline RealMatrix wedge_coeffs(const RealVector& x, const RealVector& y) {
  return x * y.transpose() - y * x.transpose();
}

inline Bivector wedge(const Vec& x, const Vec& y) {
  require_same(x.space(), y.space(), "wedge");
  return Bivector(x.space(), wedge_coeffs(x.coords(), y.coords()));
}

inline Tensor2 tensor(const Vec& x, const Vec& y) {
  require_same(x.space(), y.space(), "tensor");
  return Tensor2(x.space(), x.coords() * y.coords().transpose());
}

inline double pair_coeffs(const RealMatrix& t, const RealMatrix& f) {
  if (t.rows() != f.rows() || t.cols() != f.cols())
    throw std::invalid_argument("pair_tensor: shape mismatch");
  return t.cwiseProduct(f).sum();
}

inline void require_dual(const SpacePtr& v, const SpacePtr& d) {
  if (v->labels() != d->labels() || v->is_dual() == d->is_dual())
    throw std::invalid_argument("pair_tensor: space mismatch");
}

inline double pair_tensor(const Bivector& t, const Tensor2& f) {
  require_dual(t.space(), f.space());
  return pair_coeffs(t.coeffs(), f.coeffs());
}

inline double pair_tensor(const Tensor2& t, const Tensor2& f) {
  require_dual(t.space(), f.space());
  return pair_coeffs(t.coeffs(), f.coeffs());
}

// Central difference with one Richardson step.
template <class F>
auto finite_diff(F&& curve, double t0, double h) {
  if (!(h > 0)) throw std::invalid_argument("finite_diff: h must be positive");
  auto d1 = ((curve(t0 + h) - curve(t0 - h)) / (2 * h)).eval();
  double h2 = h / 2;
  auto d2 = ((curve(t0 + h2) - curve(t0 - h2)) / (2 * h2)).eval();
  return ((4.0 * d2 - d1) / 3.0).eval();
}

inline Vec finite_diff_vec(const std::function<Vec(double)>& curve, double t0, double h) {
  SpacePtr s = curve(t0).space();
  RealVector d = finite_diff([&](double t) { return curve(t).coords(); }, t0, h);
  return Vec(s, d);
}

class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64 (53-bit mantissa mapping)";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  RealVector uniform_vector(int n, double radius) {
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(-radius, radius);
    return v;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline Vec sample_vec(Rng& rng, const SpacePtr& space, double radius) {
  if (radius < 0) throw std::invalid_argument("sample_vec: negative radius");
  return Vec(space, rng.uniform_vector(space->dim(), radius));
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace plg
