#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "specgeo/errors.hpp"

namespace specgeo {

inline constexpr int kMaxJetOrder = 4;

// Multi-index bookkeeping shared by all jets of a given dimension.
//
// Multi-indices with total degree <= kMaxJetOrder are enumerated once per
// dimension in graded-lexicographic order, so the coefficient list of an
// order-m jet is a prefix of the order-4 list. Multiplication is a
// precomputed convolution over (a, b, dst) triples.
class JetSpace {
public:
  struct ProdTerm {
    int32_t a, b, dst;
  };

  // Cached per-dimension instance.
  static std::shared_ptr<const JetSpace> of(int nvars);

  int nvars() const { return nvars_; }
  // Number of multi-indices with |alpha| <= order.
  int size(int order) const { return size_[order]; }
  int degree(int idx) const { return degree_[idx]; }
  std::span<const int> exponents(int idx) const {
    return {exps_.data() + static_cast<size_t>(idx) * nvars_, static_cast<size_t>(nvars_)};
  }
  // alpha!
  double factorial(int idx) const { return alpha_factorial_[idx]; }
  // Index of a multi-index, or -1 when |alpha| > kMaxJetOrder.
  int index_of(std::span<const int> alpha) const;
  // Index of alpha + e_var (-1 past max order) / alpha - e_var (-1 if alpha_var = 0).
  int raised(int idx, int var) const { return up_[static_cast<size_t>(idx) * nvars_ + var]; }
  int lowered(int idx, int var) const { return down_[static_cast<size_t>(idx) * nvars_ + var]; }

  // Convolution triples with deg(a) + deg(b) <= order.
  std::span<const ProdTerm> products(int order) const {
    return {prod_.data(), prod_offset_[order]};
  }

private:
  explicit JetSpace(int nvars);

  int nvars_ = 0;
  int size_[kMaxJetOrder + 1] = {};
  std::vector<int> exps_;             // size() * nvars exponents
  std::vector<int> degree_;
  std::vector<double> alpha_factorial_;
  std::vector<int> up_, down_;
  std::vector<ProdTerm> prod_;        // sorted by deg(a)+deg(b)
  size_t prod_offset_[kMaxJetOrder + 1] = {};
  std::vector<std::pair<uint64_t, int>> lookup_;  // packed exponents -> index
};

namespace detail {

template <class T>
struct ScalarTraits {
  static bool invertible(const T& v) { return v != T(0); }
};

template <>
struct ScalarTraits<double> {
  static bool invertible(const double& v) { return v != 0.0 && std::isfinite(v); }
};

}  // namespace detail

// Truncated multivariate Taylor expansion: coefficient at multi-index alpha is
// d^alpha f(p) / alpha!. Pure value semantics; all operations are side-effect
// free.
template <class T>
class Jet {
public:
  Jet() = default;

  Jet(std::shared_ptr<const JetSpace> space, int order)
      : space_(std::move(space)), order_(order), c_(space_->size(order), T(0)) {
    if (order < 0 || order > kMaxJetOrder) throw OrderError("jet order must be in 0..4");
  }

  static Jet constant(std::shared_ptr<const JetSpace> space, int order, T value) {
    Jet j(std::move(space), order);
    j.c_[0] = value;
    return j;
  }

  static Jet variable(std::shared_ptr<const JetSpace> space, int order, int var, T value) {
    Jet j(std::move(space), order);
    j.c_[0] = value;
    if (order >= 1) j.c_[1 + var] = T(1);
    return j;
  }

  const JetSpace& space() const { return *space_; }
  std::shared_ptr<const JetSpace> space_ptr() const { return space_; }
  int nvars() const { return space_->nvars(); }
  int order() const { return order_; }
  int size() const { return static_cast<int>(c_.size()); }

  T value() const { return c_[0]; }
  const T& operator[](int idx) const { return c_[idx]; }
  T& operator[](int idx) { return c_[idx]; }
  std::span<const T> coeffs() const { return c_; }

  // d^alpha f(p) = alpha! * coeff[alpha]; throws OrderError when |alpha| > order.
  T partial(std::span<const int> alpha) const {
    int total = 0;
    for (int a : alpha) total += a;
    if (total > order_) throw OrderError("partial-derivative order exceeds jet order");
    int idx = space_->index_of(alpha);
    if (idx < 0 || idx >= size()) throw OrderError("multi-index outside jet range");
    return c_[idx] * T(space_->factorial(idx));
  }

  // Order-(m-1) jet of the partial derivative along `var`.
  Jet derivative(int var) const {
    if (order_ == 0) throw OrderError("cannot differentiate an order-0 jet");
    Jet out(space_, order_ - 1);
    for (int i = 0; i < out.size(); ++i) {
      int up = space_->raised(i, var);
      out.c_[i] = c_[up] * T(space_->exponents(up)[var]);
    }
    return out;
  }

  Jet truncated(int order) const {
    if (order >= order_) return *this;
    Jet out(space_, order);
    for (int i = 0; i < out.size(); ++i) out.c_[i] = c_[i];
    return out;
  }

  Jet operator-() const {
    Jet out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }

  Jet& operator+=(const Jet& o) { return merge(o, [](T& a, const T& b) { a += b; }); }
  Jet& operator-=(const Jet& o) { return merge(o, [](T& a, const T& b) { a -= b; }); }
  Jet& operator+=(const T& s) { c_[0] += s; return *this; }
  Jet& operator-=(const T& s) { c_[0] -= s; return *this; }
  Jet& operator*=(const T& s) { for (auto& v : c_) v *= s; return *this; }
  Jet& operator/=(const T& s) {
    if (!detail::ScalarTraits<T>::invertible(s)) throw EvalError("division by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, const T& s) { a += s; return a; }
  friend Jet operator+(const T& s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, const T& s) { a -= s; return a; }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(Jet a, const T& s) { a *= s; return a; }
  friend Jet operator*(const T& s, Jet a) { a *= s; return a; }
  friend Jet operator/(Jet a, const T& s) { a /= s; return a; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    int order = std::min(a.order_, b.order_);
    Jet out(a.space_, order);
    for (const auto& t : a.space_->products(order)) {
      out.c_[t.dst] += a.c_[t.a] * b.c_[t.b];
    }
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b.truncated(std::min(a.order_, b.order_))); }
  friend Jet operator/(const T& s, const Jet& b) { return reciprocal(b) * s; }

  // 1/b via the geometric series in the nilpotent part.
  friend Jet reciprocal(const Jet& b) {
    if (!detail::ScalarTraits<T>::invertible(b.c_[0]))
      throw EvalError("division by jet with zero constant term");
    const T b0 = b.c_[0];
    Jet u = b;
    u.c_[0] = T(0);
    u /= b0;  // u = (b - b0)/b0, nilpotent
    Jet out = Jet::constant(b.space_, b.order_, T(1));
    Jet upow = u;
    T sign(1);
    for (int m = 1; m <= b.order_; ++m) {
      sign = -sign;
      out += upow * sign;
      if (m < b.order_) upow = upow * u;
    }
    out /= b0;
    return out;
  }

private:
  template <class Op>
  Jet& merge(const Jet& o, Op op) {
    if (o.order_ < order_) {
      *this = truncated(o.order_);
    }
    for (int i = 0; i < size(); ++i) op(c_[i], o.c_[i]);
    return *this;
  }

  std::shared_ptr<const JetSpace> space_;
  int order_ = 0;
  std::vector<T> c_;
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

namespace detail {

inline void require_positive_base(double v, const char* what) {
  if (!(v > 0.0)) throw EvalError(std::string(what) + " of a non-positive value");
}
inline void require_positive_base(const std::complex<double>& v, const char* what) {
  if (v == std::complex<double>(0.0)) throw EvalError(std::string(what) + " at zero");
}

// Composes the scalar series sum_m coeff[m] * (x - x0)^m with a jet.
template <class T>
Jet<T> compose_series(const Jet<T>& x, std::span<const T> coeff) {
  Jet<T> u = x;
  u[0] = T(0);
  Jet<T> out = Jet<T>::constant(x.space_ptr(), x.order(), coeff[0]);
  Jet<T> upow = u;
  for (int m = 1; m <= x.order(); ++m) {
    out += upow * coeff[m];
    if (m < x.order()) upow = upow * u;
  }
  return out;
}

}  // namespace detail

template <class T>
Jet<T> log(const Jet<T>& x) {
  detail::require_positive_base(x.value(), "log");
  const T x0 = x.value();
  std::vector<T> coeff(x.order() + 1);
  coeff[0] = std::log(x0);
  T p = T(1);
  for (int m = 1; m <= x.order(); ++m) {
    p *= x0;
    coeff[m] = T(m % 2 == 1 ? 1.0 : -1.0) / (T(static_cast<double>(m)) * p);
  }
  return detail::compose_series(x, std::span<const T>(coeff));
}

template <class T>
Jet<T> exp(const Jet<T>& x) {
  const T e0 = std::exp(x.value());
  std::vector<T> coeff(x.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= x.order(); ++m) {
    if (m > 0) fact *= m;
    coeff[m] = e0 / T(fact);
  }
  return detail::compose_series(x, std::span<const T>(coeff));
}

// x^a for real exponent a; requires a positive (real case) or non-zero
// (complex case, principal branch) constant term.
template <class T>
Jet<T> pow(const Jet<T>& x, double a) {
  detail::require_positive_base(x.value(), "pow");
  const T x0 = x.value();
  std::vector<T> coeff(x.order() + 1);
  coeff[0] = std::pow(x0, T(a));
  T binom = T(1);
  T xp = coeff[0];
  for (int m = 1; m <= x.order(); ++m) {
    binom *= T((a - (m - 1)) / m);
    xp /= x0;
    coeff[m] = binom * xp;
  }
  return detail::compose_series(x, std::span<const T>(coeff));
}

template <class T>
Jet<T> sqrt(const Jet<T>& x) {
  return pow(x, 0.5);
}

inline CJet conj(const CJet& x) {
  CJet out = x;
  for (int i = 0; i < out.size(); ++i) out[i] = std::conj(out[i]);
  return out;
}

inline RJet real_part(const CJet& x) {
  RJet out(x.space_ptr(), x.order());
  for (int i = 0; i < out.size(); ++i) out[i] = x[i].real();
  return out;
}

inline RJet imag_part(const CJet& x) {
  RJet out(x.space_ptr(), x.order());
  for (int i = 0; i < out.size(); ++i) out[i] = x[i].imag();
  return out;
}

inline CJet complexify(const RJet& x) {
  CJet out(x.space_ptr(), x.order());
  for (int i = 0; i < out.size(); ++i) out[i] = x[i];
  return out;
}

// Seeds the coordinate variables at p and evaluates f with jet arithmetic.
template <class T, class F>
Jet<T> jet_eval(F&& f, std::span<const T> p, int order) {
  auto space = JetSpace::of(static_cast<int>(p.size()));
  std::vector<Jet<T>> vars;
  vars.reserve(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    vars.push_back(Jet<T>::variable(space, order, static_cast<int>(i), p[i]));
  }
  return f(std::span<const Jet<T>>(vars));
}

template <class T>
T extract_partial(const Jet<T>& j, std::span<const int> alpha) {
  return j.partial(alpha);
}

}  // namespace specgeo
