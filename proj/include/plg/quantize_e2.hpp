#pragma once

#include "plg/poisson.hpp"

#include <array>
#include <tuple>
#include <unordered_map>

namespace plg {

// Laurent polynomial in the formal parameter h with complex coefficients.
class HPoly {
 public:
  HPoly() = default;
  static HPoly monomial(int power, cplx c) {
    HPoly p;
    if (c != cplx(0)) p.c_[power] = c;
    return p;
  }
  const std::map<int, cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? cplx(0) : it->second;
  }
  bool is_zero() const { return c_.empty(); }
  int min_power() const { return c_.empty() ? 0 : c_.begin()->first; }

  HPoly& add(const HPoly& o, cplx s = 1.0) {
    for (const auto& [k, c] : o.c_) c_[k] += s * c;
    prune();
    return *this;
  }
  HPoly operator+(const HPoly& o) const { return HPoly(*this).add(o); }
  HPoly operator-(const HPoly& o) const { return HPoly(*this).add(o, -1.0); }
  HPoly operator*(cplx s) const { return HPoly().add(*this, s); }
  HPoly operator*(const HPoly& o) const {
    HPoly p;
    for (const auto& [a, x] : c_)
      for (const auto& [b, y] : o.c_) p.c_[a + b] += x * y;
    p.prune();
    return p;
  }
  HPoly shifted(int k) const {
    HPoly p;
    for (const auto& [a, x] : c_) p.c_[a + k] = x;
    return p;
  }
  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [k, c] : c_) m = std::max(m, std::abs(c));
    return m;
  }
  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [k, c] : c_) {
      if (!first) s << " + ";
      first = false;
      s << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      if (k != 0) s << "h^" << k;
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

// t_a^a t_2^b e^{i n phi}; for Sym elements the commutative monomial with the same exponents.
struct CKey {
  int a = 0, b = 0, n = 0;
  int degree() const { return a + b; }
  bool operator<(const CKey& o) const { return std::tie(a, b, n) < std::tie(o.a, o.b, o.n); }
  bool operator==(const CKey& o) const { return a == o.a && b == o.b && n == o.n; }
};

template <class C>
class KeyedSum {
 public:
  using Map = std::map<CKey, C>;
  KeyedSum() = default;
  KeyedSum(CKey k, C c) { add(k, c); }

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  C coeff(const CKey& k) const {
    auto it = t_.find(k);
    return it == t_.end() ? C() : it->second;
  }

  void add(const CKey& k, const C& c) {
    auto it = t_.find(k);
    if (it == t_.end()) {
      if (!zero(c)) t_.emplace(k, c);
      return;
    }
    it->second = it->second + c;
    if (zero(it->second)) t_.erase(it);
  }
  KeyedSum& operator+=(const KeyedSum& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
  }
  KeyedSum& operator-=(const KeyedSum& o) {
    for (const auto& [k, c] : o.t_) add(k, c * cplx(-1));
    return *this;
  }
  KeyedSum operator+(const KeyedSum& o) const { return KeyedSum(*this) += o; }
  KeyedSum operator-(const KeyedSum& o) const { return KeyedSum(*this) -= o; }
  KeyedSum operator*(cplx s) const {
    KeyedSum r;
    for (const auto& [k, c] : t_) r.add(k, c * s);
    return r;
  }
  // multiply on the right by e^{i m phi}
  KeyedSum shift_mode(int m) const {
    KeyedSum r;
    for (const auto& [k, c] : t_) r.t_.emplace(CKey{k.a, k.b, k.n + m}, c);
    return r;
  }

 private:
  static bool zero(const cplx& c) { return c == cplx(0); }
  static bool zero(const HPoly& c) { return c.is_zero(); }
  Map t_;
};

using PureElement = KeyedSum<cplx>;        // constant coefficients
using CrossedElement = KeyedSum<HPoly>;    // normal-ordered, coefficients in h
using SymElement = KeyedSum<cplx>;         // commutative monomials

inline double max_coeff(const CrossedElement& e) {
  double m = 0;
  for (const auto& [k, c] : e.terms()) m = std::max(m, c.max_abs_coeff());
  return m;
}
inline double max_coeff(const PureElement& e) {
  double m = 0;
  for (const auto& [k, c] : e.terms()) m = std::max(m, std::abs(c));
  return m;
}

inline CrossedElement lift(const PureElement& p) {
  CrossedElement e;
  for (const auto& [k, c] : p.terms()) e.add(k, HPoly::monomial(0, c));
  return e;
}

inline std::string crossed_str(const CrossedElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, c] : e.terms()) {
    if (!first) s << " + ";
    first = false;
    s << "[" << c.str() << "]";
    if (k.a) s << " t_a" << (k.a > 1 ? "^" + std::to_string(k.a) : "");
    if (k.b) s << " t_2" << (k.b > 1 ? "^" + std::to_string(k.b) : "");
    if (k.n) s << " e^{" << k.n << "i phi}";
  }
  return s.str();
}

struct KeyHash {
  size_t operator()(const std::array<int, 3>& k) const {
    return (static_cast<size_t>(k[0]) * 1000003u) ^ (static_cast<size_t>(k[1] + 512) * 8191u) ^
           static_cast<size_t>(k[2] + 4096);
  }
};

// U(c) x| Trig(U(1)) with [t_a, t_2] = alpha t_a + beta t_2 and [t_y, f] = X'_y f.
// Not thread-safe: products are memoized.
class CrossedAlgebra {
 public:
  CrossedAlgebra(TrigPoly anchor_a, TrigPoly anchor_2, double alpha, double beta, double crossed_sign = 1.0)
      : anchor_{std::move(anchor_a), std::move(anchor_2)}, alpha_(alpha), beta_(beta), sign_(crossed_sign) {}

  static CrossedAlgebra from_pair(const MatchedPair& mp, const CircleData& cd, double crossed_sign = 1.0) {
    if (mp.m() != 2) throw std::invalid_argument("CrossedAlgebra: c must be two-dimensional");
    RealVector br = mp.c_bracket(RealVector::Unit(2, 0), RealVector::Unit(2, 1));
    return CrossedAlgebra(cd.anchor[0], cd.anchor[1], br(0), br(1), crossed_sign);
  }

  const TrigPoly& anchor(int y) const { return anchor_[y]; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  // t_2^q t_a^i t_2^j in normal form
  const PureElement& t2_times(int q, int i, int j) const {
    std::array<int, 3> key{q, i, j};
    auto it = t2_cache_.find(key);
    if (it != t2_cache_.end()) return it->second;
    PureElement r;
    if (q == 0) {
      r.add({i, j, 0}, 1.0);
    } else if (i == 0) {
      r.add({0, j + q, 0}, 1.0);
    } else if (q > 1) {
      for (const auto& [k, c] : t2_times(q - 1, i, j).terms()) r += t2_times(1, k.a, k.b) * c;
    } else {
      // t_2 t_a R = t_a (t_2 R) - alpha t_a R - beta t_2 R, R = t_a^{i-1} t_2^j
      const PureElement& t2R = t2_times(1, i - 1, j);
      for (const auto& [k, c] : t2R.terms()) r.add({k.a + 1, k.b, k.n}, c);
      r.add({i, j, 0}, -alpha_);
      r += t2R * cplx(-beta_);
    }
    return t2_cache_.emplace(key, std::move(r)).first->second;
  }

  // e^{i n phi} t_a^i t_2^j in normal form
  const PureElement& f_times(int n, int i, int j) const {
    std::array<int, 3> key{n, i, j};
    auto it = f_cache_.find(key);
    if (it != f_cache_.end()) return it->second;
    PureElement r;
    if (i == 0 && j == 0) {
      r.add({0, 0, n}, 1.0);
    } else {
      // f t_y R = t_y (f R) - X'_y(f) R
      int y = i > 0 ? 0 : 1;
      int ri = i > 0 ? i - 1 : 0, rj = i > 0 ? j : j - 1;
      for (const auto& [k, c] : f_times(n, ri, rj).terms()) r.add({k.a + (y == 0), k.b + (y == 1), k.n}, c);
      TrigPoly xf = anchor_[y] * TrigPoly::mode(n).derivative() * cplx(sign_);
      for (const auto& [mode, c] : xf.coeffs()) r += f_times(mode, ri, rj) * (-c);
    }
    return f_cache_.emplace(key, std::move(r)).first->second;
  }

  const PureElement& mono_product(const CKey& x, const CKey& y) const {
    std::array<int, 3> kx{x.a, x.b, x.n};
    auto outer = prod_cache_.find(kx);
    if (outer != prod_cache_.end()) {
      auto inner = outer->second.find({y.a, y.b, y.n});
      if (inner != outer->second.end()) return inner->second;
    }
    // t_a^xa t_2^xb [e^{i xn phi} t_a^ya t_2^yb] e^{i yn phi}
    PureElement r;
    for (const auto& [k, c] : f_times(x.n, y.a, y.b).terms())
      for (const auto& [k2, c2] : t2_times(x.b, k.a, k.b).terms()) r.add({k2.a + x.a, k2.b, k.n + y.n}, c * c2);
    return prod_cache_[kx].emplace(std::array<int, 3>{y.a, y.b, y.n}, std::move(r)).first->second;
  }

  CrossedElement mul(const CrossedElement& A, const CrossedElement& B) const {
    CrossedElement r;
    for (const auto& [ka, ca] : A.terms())
      for (const auto& [kb, cb] : B.terms()) {
        HPoly cc = ca * cb;
        for (const auto& [k, c] : mono_product(ka, kb).terms()) r.add(k, cc * c);
      }
    return r;
  }

  PureElement mul(const PureElement& A, const PureElement& B) const {
    PureElement r;
    for (const auto& [ka, ca] : A.terms())
      for (const auto& [kb, cb] : B.terms()) r += mono_product(ka, kb) * (ca * cb);
    return r;
  }

 private:
  std::array<TrigPoly, 2> anchor_;
  double alpha_, beta_, sign_;
  mutable std::unordered_map<std::array<int, 3>, PureElement, KeyHash> t2_cache_, f_cache_;
  mutable std::unordered_map<std::array<int, 3>, std::unordered_map<std::array<int, 3>, PureElement, KeyHash>, KeyHash>
      prod_cache_;
};

inline CrossedElement crossed_mul(const CrossedAlgebra& alg, const CrossedElement& A, const CrossedElement& B) {
  return alg.mul(A, B);
}

inline CrossedElement generator_a() { return CrossedElement({1, 0, 0}, HPoly::monomial(0, 1.0)); }
inline CrossedElement generator_2() { return CrossedElement({0, 1, 0}, HPoly::monomial(0, 1.0)); }
inline CrossedElement trig(int n, cplx c = 1.0) { return CrossedElement({0, 0, n}, HPoly::monomial(0, c)); }

inline CrossedElement Qh(const SymElement& S) {
  CrossedElement r;
  for (const auto& [k, c] : S.terms()) r.add(k, HPoly::monomial(k.degree(), c));
  return r;
}

// Divides the coefficient of each monomial by h^degree.
inline KeyedSum<HPoly> Qh_inverse(const CrossedElement& E) {
  KeyedSum<HPoly> r;
  for (const auto& [k, c] : E.terms()) r.add(k, c.shifted(-k.degree()));
  return r;
}

inline SymElement sym_mul(const SymElement& A, const SymElement& B) {
  SymElement r;
  for (const auto& [ka, ca] : A.terms())
    for (const auto& [kb, cb] : B.terms()) r.add({ka.a + kb.a, ka.b + kb.b, ka.n + kb.n}, ca * cb);
  return r;
}

inline SymElement sym_from_trig(const TrigPoly& f) {
  SymElement r;
  for (const auto& [n, c] : f.coeffs()) r.add({0, 0, n}, c);
  return r;
}

// Partial derivatives in the coordinates (y_a, y_2, phi).
inline SymElement sym_partial(const SymElement& S, int u) {
  SymElement r;
  for (const auto& [k, c] : S.terms()) {
    if (u == 0 && k.a) r.add({k.a - 1, k.b, k.n}, c * cplx(k.a));
    if (u == 1 && k.b) r.add({k.a, k.b - 1, k.n}, c * cplx(k.b));
    if (u == 2 && k.n) r.add(k, c * cplx(0, k.n));
  }
  return r;
}

// Biderivation with {y_a, y_2} = alpha y_a + beta y_2, {y, phi} = anchor_y(phi).
inline SymElement poisson_sym(const CrossedAlgebra& alg, const SymElement& F, const SymElement& G) {
  SymElement coord[3][3];
  coord[0][1] = SymElement({1, 0, 0}, alg.alpha()) + SymElement({0, 1, 0}, alg.beta());
  coord[1][0] = coord[0][1] * cplx(-1);
  coord[0][2] = sym_from_trig(alg.anchor(0));
  coord[2][0] = coord[0][2] * cplx(-1);
  coord[1][2] = sym_from_trig(alg.anchor(1));
  coord[2][1] = coord[1][2] * cplx(-1);
  SymElement dF[3], dG[3];
  for (int u = 0; u < 3; ++u) dF[u] = sym_partial(F, u), dG[u] = sym_partial(G, u);
  SymElement r;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (!coord[u][v].is_zero() && !dF[u].is_zero() && !dG[v].is_zero())
        r += sym_mul(sym_mul(dF[u], dG[v]), coord[u][v]);
  return r;
}

struct SemiclassicalReport {
  int maxdeg = 0, maxmode = 0;
  long pairs = 0;
  double max_h0_residual = 0;
  double max_exact_residual = 0;  // linear x linear and linear x function, all orders
  bool negative_power = false;
  long pairs_with_higher_order = 0;
  bool pass = false;
};

// (y_a, y_2, f) monomials of degree <= maxdeg and |mode| <= maxmode
inline std::vector<CKey> sym_monomials(int maxdeg, int maxmode) {
  std::vector<CKey> out;
  for (int d = 0; d <= maxdeg; ++d)
    for (int a = d; a >= 0; --a)
      for (int n = -maxmode; n <= maxmode; ++n) out.push_back({a, d - a, n});
  return out;
}

// [Qh A, Qh B]/h - Qh {A, B} after Qh^-1, as polynomials in h per monomial.
inline KeyedSum<HPoly> semiclassical_defect(const CrossedAlgebra& alg, const CKey& x, const CKey& y) {
  const PureElement& xy = alg.mono_product(x, y);
  const PureElement& yx = alg.mono_product(y, x);
  PureElement comm = xy - yx;
  int top = x.degree() + y.degree() - 1;  // h-power of [Qh A, Qh B]/h before Qh^-1
  KeyedSum<HPoly> r;
  for (const auto& [k, c] : comm.terms()) r.add(k, HPoly::monomial(top - k.degree(), c));
  SymElement pb = poisson_sym(alg, SymElement(x, 1.0), SymElement(y, 1.0));
  for (const auto& [k, c] : pb.terms()) r.add(k, HPoly::monomial(0, -c));
  return r;
}

inline SemiclassicalReport verify_semiclassical(const CrossedAlgebra& alg, int maxdeg, int maxmode, double tol = 1e-9) {
  if (maxdeg < 1) throw std::invalid_argument("verify_semiclassical: maxdeg must be at least 1");
  SemiclassicalReport rep;
  rep.maxdeg = maxdeg;
  rep.maxmode = maxmode;
  auto mons = sym_monomials(maxdeg, maxmode);
  auto linear_only = [](const CKey& k) { return k.degree() == 1 && k.n == 0; };
  auto function_only = [](const CKey& k) { return k.degree() == 0; };
  for (const auto& x : mons)
    for (const auto& y : mons) {
      ++rep.pairs;
      auto d = semiclassical_defect(alg, x, y);
      bool exact = (linear_only(x) && (linear_only(y) || function_only(y))) ||
                   (linear_only(y) && function_only(x));
      bool higher = false;
      for (const auto& [k, c] : d.terms())
        for (const auto& [p, v] : c.coeffs()) {
          if (p < 0) rep.negative_power = true;
          if (p == 0) rep.max_h0_residual = std::max(rep.max_h0_residual, std::abs(v));
          if (p > 0) higher = true;
          if (exact) rep.max_exact_residual = std::max(rep.max_exact_residual, std::abs(v));
        }
      if (higher) ++rep.pairs_with_higher_order;
    }
  rep.pass = !rep.negative_power && rep.max_h0_residual <= tol && rep.max_exact_residual <= tol;
  return rep;
}

// Tensor powers of the crossed algebra.
template <size_t N>
class CrossedTensor {
 public:
  using Key = std::array<CKey, N>;
  struct Less {
    bool operator()(const Key& x, const Key& y) const {
      for (size_t i = 0; i < N; ++i) {
        if (x[i] < y[i]) return true;
        if (y[i] < x[i]) return false;
      }
      return false;
    }
  };
  using Map = std::map<Key, cplx, Less>;

  const Map& terms() const { return t_; }
  void add(const Key& k, cplx c) {
    if (c == cplx(0)) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second == cplx(0)) t_.erase(it);
  }
  CrossedTensor& operator+=(const CrossedTensor& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
  }
  CrossedTensor operator-(const CrossedTensor& o) const {
    CrossedTensor r = *this;
    for (const auto& [k, c] : o.t_) r.add(k, -c);
    return r;
  }
  CrossedTensor operator*(cplx s) const {
    CrossedTensor r;
    for (const auto& [k, c] : t_) r.add(k, c * s);
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& [k, c] : t_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  Map t_;
};

template <size_t N>
CrossedTensor<N> tensor_mul(const CrossedAlgebra& alg, const CrossedTensor<N>& A, const CrossedTensor<N>& B) {
  CrossedTensor<N> r;
  for (const auto& [ka, ca] : A.terms())
    for (const auto& [kb, cb] : B.terms()) {
      // expand the product leg by leg
      std::vector<std::pair<typename CrossedTensor<N>::Key, cplx>> acc{{typename CrossedTensor<N>::Key{}, ca * cb}};
      for (size_t leg = 0; leg < N; ++leg) {
        const PureElement& p = alg.mono_product(ka[leg], kb[leg]);
        std::vector<std::pair<typename CrossedTensor<N>::Key, cplx>> next;
        for (const auto& [key, c] : acc)
          for (const auto& [k, v] : p.terms()) {
            auto nk = key;
            nk[leg] = k;
            next.emplace_back(nk, c * v);
          }
        acc.swap(next);
      }
      for (const auto& [key, c] : acc) r.add(key, c);
    }
  return r;
}

enum class ActionChoice { Forward, Inverse };

// Delta(e^{in phi}) = e^{in phi} (x) e^{in phi};
// Delta(t_y) = t_y (x) 1 + sum_k m_{ky}(phi) (x) t_{y_k}, m = action on c at a or a^-1.
class Coproduct {
 public:
  Coproduct(const CrossedAlgebra& alg, const CircleData& cd, ActionChoice choice)
      : alg_(alg), choice_(choice) {
    for (int y = 0; y < 2; ++y) {
      CrossedTensor<2> d;
      d.add({CKey{y == 0, y == 1, 0}, CKey{}}, 1.0);
      for (int k = 0; k < 2; ++k) {
        const TrigPoly& m = cd.action[k][y];
        for (const auto& [n, c] : m.coeffs())
          d.add({CKey{0, 0, choice == ActionChoice::Forward ? n : -n}, CKey{k == 0, k == 1, 0}}, c);
      }
      gen_[y] = d;
    }
  }

  ActionChoice choice() const { return choice_; }

  const CrossedTensor<2>& of_monomial(const CKey& key) const {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CrossedTensor<2> r;
    if (key.a > 0) {
      r = tensor_mul(alg_, gen_[0], of_monomial({key.a - 1, key.b, key.n}));
    } else if (key.b > 0) {
      r = tensor_mul(alg_, gen_[1], of_monomial({0, key.b - 1, key.n}));
    } else {
      r.add({CKey{0, 0, key.n}, CKey{0, 0, key.n}}, 1.0);
    }
    return cache_.emplace(key, std::move(r)).first->second;
  }

  CrossedTensor<2> operator()(const PureElement& A) const {
    CrossedTensor<2> r;
    for (const auto& [k, c] : A.terms()) r += of_monomial(k) * c;
    return r;
  }

  CrossedTensor<3> left(const CrossedTensor<2>& T) const {
    CrossedTensor<3> r;
    for (const auto& [k, c] : T.terms())
      for (const auto& [k2, c2] : of_monomial(k[0]).terms()) r.add({k2[0], k2[1], k[1]}, c * c2);
    return r;
  }
  CrossedTensor<3> right(const CrossedTensor<2>& T) const {
    CrossedTensor<3> r;
    for (const auto& [k, c] : T.terms())
      for (const auto& [k2, c2] : of_monomial(k[1]).terms()) r.add({k[0], k2[0], k2[1]}, c * c2);
    return r;
  }

 private:
  const CrossedAlgebra& alg_;
  ActionChoice choice_;
  CrossedTensor<2> gen_[2];
  mutable std::map<CKey, CrossedTensor<2>> cache_;
};

inline PureElement random_pure(Rng& rng, int maxdeg = 2, int maxmode = 2, int terms = 3) {
  PureElement e;
  for (int t = 0; t < terms; ++t) {
    int d = rng.uniform_int(0, maxdeg);
    int a = rng.uniform_int(0, d);
    int n = rng.uniform_int(-maxmode, maxmode);
    e.add({a, d - a, n}, cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  }
  return e;
}

struct CoproductReport {
  double coassociativity = 0;
  double homomorphism = 0;
  int samples = 0;
};

inline CoproductReport check_coproduct(const CrossedAlgebra& alg, const Coproduct& D, Rng& rng, int samples = 50) {
  CoproductReport rep;
  rep.samples = samples;
  std::vector<PureElement> gens = {PureElement({1, 0, 0}, 1.0), PureElement({0, 1, 0}, 1.0), PureElement({0, 0, 1}, 1.0),
                                   PureElement({0, 0, -1}, 1.0), PureElement({0, 0, 0}, 1.0)};
  auto coassoc = [&](const PureElement& A) {
    CrossedTensor<2> d = D(A);
    return (D.left(d) - D.right(d)).max_abs();
  };
  auto hom = [&](const PureElement& A, const PureElement& B) {
    return (D(alg.mul(A, B)) - tensor_mul(alg, D(A), D(B))).max_abs();
  };
  for (const auto& g : gens) rep.coassociativity = std::max(rep.coassociativity, coassoc(g));
  for (const auto& g : gens)
    for (const auto& h : gens) rep.homomorphism = std::max(rep.homomorphism, hom(g, h));
  for (int s = 0; s < samples; ++s) {
    PureElement A = random_pure(rng), B = random_pure(rng);
    rep.coassociativity = std::max(rep.coassociativity, coassoc(alg.mul(A, B)));
    rep.homomorphism = std::max(rep.homomorphism, hom(A, B));
  }
  return rep;
}

}  // namespace plg
