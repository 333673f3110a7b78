#pragma once

// Truncated Taylor arithmetic ("jets").
//
// A Jet<Scalar> of order n holds c[k] = f^(k)(x0) / k!, k = 0..n, for some
// function f at an implicit expansion point x0. Every operation below is
// exact through order n, so evaluating an expression tree over jets gives
// derivatives without finite differences or expression swell.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace iso {

template <typename Scalar>
class Jet {
 public:
  using scalar_type = Scalar;

  Jet() : c_(1, Scalar(0)) {}
  explicit Jet(int order, Scalar value = Scalar(0)) : c_(order + 1, Scalar(0)) {
    assert(order >= 0);
    c_[0] = value;
  }
  explicit Jet(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("Jet needs at least one coefficient");
  }

  /// Identity jet of the independent variable at x0: [x0, 1, 0, ...].
  static Jet variable(Scalar x0, int order) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = Scalar(1);
    return j;
  }
  static Jet constant(Scalar v, int order) { return Jet(order, v); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Scalar value() const { return c_[0]; }
  const Scalar& operator[](std::size_t k) const { return c_[k]; }
  Scalar& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  /// k-th derivative, i.e. k! * c[k].
  Scalar derivative(int k) const {
    Scalar d = c_[k];
    for (int i = 2; i <= k; ++i) d *= Scalar(i);
    return d;
  }

  Jet truncated(int order) const {
    std::vector<Scalar> c(c_.begin(), c_.begin() + std::min<std::size_t>(order + 1, c_.size()));
    c.resize(order + 1, Scalar(0));
    return Jet(std::move(c));
  }

  Jet operator-() const {
    Jet r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet& operator+=(Scalar s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(Scalar s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(Scalar s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator/=(Scalar s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Scalar s) { return a += s; }
  friend Jet operator+(Scalar s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Scalar s) { return a -= s; }
  friend Jet operator-(Scalar s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Scalar s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    const int n = a.order();
    Jet r(n);
    for (int k = 0; k <= n; ++k) {
      Scalar s(0);
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    if (b.c_[0] == Scalar(0)) throw std::domain_error("jet division by a jet with zero value");
    const int n = a.order();
    Jet q(n);
    for (int k = 0; k <= n; ++k) {
      Scalar s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend Jet operator/(Scalar s, const Jet& b) { return Jet::constant(s, b.order()) / b; }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("jet order mismatch");
  }

  std::vector<Scalar> c_;
};

using Jetd = Jet<double>;

template <typename S>
Jet<S> exp(const Jet<S>& a) {
  using std::exp;
  const int n = a.order();
  Jet<S> e(n, exp(a[0]));
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j <= k; ++j) s += S(j) * a[j] * e[k - j];
    e[k] = s / S(k);
  }
  return e;
}

template <typename S>
Jet<S> log(const Jet<S>& a) {
  using std::log;
  if (!(a[0] > S(0))) throw std::domain_error("log of a non-positive value");
  const int n = a.order();
  Jet<S> l(n, log(a[0]));
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j < k; ++j) s += S(j) * l[j] * a[k - j];
    l[k] = (a[k] - s / S(k)) / a[0];
  }
  return l;
}

/// a^p for a real exponent; needs a[0] > 0 unless p is a non-negative integer.
template <typename S>
Jet<S> pow(const Jet<S>& a, S p) {
  using std::pow;
  using std::floor;
  const int n = a.order();
  if (p == floor(p) && std::abs(p) <= 64) {
    const long e = static_cast<long>(p);
    Jet<S> r = Jet<S>::constant(S(1), n);
    Jet<S> base = a;
    for (long m = std::labs(e); m > 0; m >>= 1) {
      if (m & 1) r = r * base;
      if (m > 1) base = base * base;
    }
    return e < 0 ? S(1) / r : r;
  }
  if (!(a[0] > S(0))) throw std::domain_error("non-integer power of a non-positive value");
  Jet<S> r(n, pow(a[0], p));
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j <= k; ++j) s += (p * S(j) - S(k - j)) * a[j] * r[k - j];
    r[k] = s / (S(k) * a[0]);
  }
  return r;
}

template <typename S>
Jet<S> sqrt(const Jet<S>& a) {
  using std::sqrt;
  if (a[0] < S(0)) throw std::domain_error("sqrt of a negative value");
  const int n = a.order();
  Jet<S> r(n, sqrt(a[0]));
  if (n == 0) return r;
  if (a[0] == S(0)) throw std::domain_error("sqrt is not differentiable at 0");
  // r*r = a  =>  2 r0 r_k = a_k - sum_{j=1}^{k-1} r_j r_{k-j}
  for (int k = 1; k <= n; ++k) {
    S s = a[k];
    for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (S(2) * r[0]);
  }
  return r;
}

template <typename S>
void sincos(const Jet<S>& a, Jet<S>& s, Jet<S>& c) {
  using std::sin;
  using std::cos;
  const int n = a.order();
  s = Jet<S>(n, sin(a[0]));
  c = Jet<S>(n, cos(a[0]));
  for (int k = 1; k <= n; ++k) {
    S ss(0), cc(0);
    for (int j = 1; j <= k; ++j) {
      ss += S(j) * a[j] * c[k - j];
      cc += S(j) * a[j] * s[k - j];
    }
    s[k] = ss / S(k);
    c[k] = -cc / S(k);
  }
}

template <typename S>
Jet<S> sin(const Jet<S>& a) {
  Jet<S> s, c;
  sincos(a, s, c);
  return s;
}

template <typename S>
Jet<S> cos(const Jet<S>& a) {
  Jet<S> s, c;
  sincos(a, s, c);
  return c;
}

template <typename S>
Jet<S> tanh(const Jet<S>& a) {
  using std::tanh;
  const int n = a.order();
  Jet<S> t(n, tanh(a[0]));
  std::vector<S> u(n + 1, S(0));  // u = 1 - t^2
  u[0] = S(1) - t[0] * t[0];
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j <= k; ++j) s += S(j) * a[j] * u[k - j];
    t[k] = s / S(k);
    S q(0);
    for (int i = 0; i <= k; ++i) q += t[i] * t[k - i];
    u[k] = -q;
  }
  return t;
}

/// Taylor composition: `outer` holds the jet of u at inner.value(); returns u(inner(x)).
template <typename S>
Jet<S> compose(const Jet<S>& outer, const Jet<S>& inner) {
  const int n = inner.order();
  Jet<S> d = inner;
  d[0] = S(0);
  // Horner in the zero-constant increment d.
  const int m = std::min(outer.order(), n);
  Jet<S> r = Jet<S>::constant(outer[m], n);
  for (int k = m - 1; k >= 0; --k) r = r * d + outer[k];
  return r;
}

}  // namespace iso
