#pragma once

#include "plg/algebra_core.hpp"

#include <map>
#include <sstream>

namespace plg {

// sum_n c_n e^{i n phi}
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(std::initializer_list<std::pair<const int, cplx>> init) : c_(init) { prune(); }

  static TrigPoly mode(int n, cplx c = 1.0) {
    TrigPoly p;
    p.c_[n] = c;
    p.prune();
    return p;
  }
  static TrigPoly constant(cplx c) { return mode(0, c); }

  const std::map<int, cplx>& coeffs() const { return c_; }
  cplx coeff(int n) const {
    auto it = c_.find(n);
    return it == c_.end() ? cplx(0) : it->second;
  }
  bool is_zero() const { return c_.empty(); }

  TrigPoly& operator+=(const TrigPoly& o) {
    for (const auto& [n, c] : o.c_) c_[n] += c;
    prune();
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    for (const auto& [n, c] : o.c_) c_[n] -= c;
    prune();
    return *this;
  }
  TrigPoly operator+(const TrigPoly& o) const { return TrigPoly(*this) += o; }
  TrigPoly operator-(const TrigPoly& o) const { return TrigPoly(*this) -= o; }
  TrigPoly operator-() const { return *this * cplx(-1); }
  TrigPoly operator*(cplx s) const {
    TrigPoly p;
    for (const auto& [n, c] : c_) p.c_[n] = c * s;
    p.prune();
    return p;
  }
  TrigPoly operator*(const TrigPoly& o) const {
    TrigPoly p;
    for (const auto& [n, a] : c_)
      for (const auto& [m, b] : o.c_) p.c_[n + m] += a * b;
    p.prune();
    return p;
  }

  // d/dphi
  TrigPoly derivative() const {
    TrigPoly p;
    for (const auto& [n, c] : c_) p.c_[n] = c * cplx(0, n);
    p.prune();
    return p;
  }

  cplx operator()(double phi) const {
    cplx s = 0;
    for (const auto& [n, c] : c_) s += c * std::polar(1.0, n * phi);
    return s;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [n, c] : c_) m = std::max(m, std::abs(c));
    return m;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [n, c] : c_) {
      if (!first) s << " + ";
      first = false;
      s << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      if (n != 0) s << "e^{" << n << "i phi}";
    }
    return s.str();
  }

 private:
  void prune() {
    for (auto it = c_.begin(); it != c_.end();)
      it = it->second == cplx(0) ? c_.erase(it) : std::next(it);
  }
  std::map<int, cplx> c_;
};

inline TrigPoly operator*(cplx s, const TrigPoly& p) { return p * s; }

inline double trig_distance(const TrigPoly& a, const TrigPoly& b) { return (a - b).max_abs_coeff(); }

// Fourier coefficients from N equispaced samples on [0, 2 pi); modes |n| < N/2.
// Coefficients below snap are set to zero.
inline TrigPoly fourier_from_samples(const std::vector<cplx>& s, double snap = 1e-13) {
  int N = static_cast<int>(s.size());
  TrigPoly p;
  for (int n = -N / 2 + 1; n < N / 2; ++n) {
    cplx c = 0;
    for (int j = 0; j < N; ++j) c += s[j] * std::polar(1.0, -2 * M_PI * n * j / N);
    c /= static_cast<double>(N);
    double re = std::abs(c.real()) < snap ? 0.0 : c.real();
    double im = std::abs(c.imag()) < snap ? 0.0 : c.imag();
    if (re != 0.0 || im != 0.0) p += TrigPoly::mode(n, cplx(re, im));
  }
  return p;
}

inline TrigPoly fourier_fit(const std::function<cplx(double)>& f, int N = 16, double snap = 1e-13) {
  std::vector<cplx> s(N);
  for (int j = 0; j < N; ++j) s[j] = f(2 * M_PI * j / N);
  return fourier_from_samples(s, snap);
}

}  // namespace plg
