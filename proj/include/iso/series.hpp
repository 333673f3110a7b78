#pragma once

// Truncated power series sum_{k=0}^{N} c_k x^k, templated on the scalar so the
// coefficient maps can run in exact rational arithmetic (see rational.hpp).
//
// Every operation is exact through the truncation order of its result.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iso/error.hpp"

namespace iso {

template <typename Scalar>
struct ScalarTraits {
  static Scalar sqrt(const Scalar& v) {
    using std::sqrt;
    return sqrt(v);
  }
  static bool is_zero(const Scalar& v) { return v == Scalar(0); }
};

template <typename Scalar>
class SeriesPoly {
 public:
  explicit SeriesPoly(int order = 0) : c_(static_cast<std::size_t>(order) + 1, Scalar(0)) {
    if (order < 0) throw DomainError("series order must be non-negative");
  }
  /// Coefficients beyond `order` are dropped, missing ones are zero.
  SeriesPoly(std::vector<Scalar> coeffs, int order) : c_(std::move(coeffs)) {
    if (order < 0) throw DomainError("series order must be non-negative");
    c_.resize(static_cast<std::size_t>(order) + 1, Scalar(0));
  }
  /// Order taken from the coefficient count.
  explicit SeriesPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(Scalar(0));
  }

  static SeriesPoly variable(int order) {
    SeriesPoly s(order);
    if (order >= 1) s.c_[1] = Scalar(1);
    return s;
  }
  static SeriesPoly constant(const Scalar& v, int order) {
    SeriesPoly s(order);
    s.c_[0] = v;
    return s;
  }
  /// Odd series from [c_1, c_3, c_5, ...].
  static SeriesPoly odd(const std::vector<Scalar>& odd_coeffs, int order) {
    SeriesPoly s(order);
    for (std::size_t k = 0; k < odd_coeffs.size() && 2 * k + 1 <= static_cast<std::size_t>(order); ++k)
      s.c_[2 * k + 1] = odd_coeffs[k];
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& operator[](std::size_t k) const { return c_[k]; }
  Scalar& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  SeriesPoly truncated(int order) const { return SeriesPoly(c_, order); }

  template <typename T>
  T eval(const T& x) const {
    T s(c_.back());
    for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) s = s * x + T(*it);
    return s;
  }

  friend bool operator==(const SeriesPoly& a, const SeriesPoly& b) { return a.c_ == b.c_; }

  SeriesPoly operator-() const {
    SeriesPoly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) {
    const int n = std::min(a.order(), b.order());
    SeriesPoly r(n);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend SeriesPoly operator-(const SeriesPoly& a, const SeriesPoly& b) { return a + (-b); }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    const int n = std::min(a.order(), b.order());
    SeriesPoly r(n);
    for (int i = 0; i <= n; ++i) {
      if (ScalarTraits<Scalar>::is_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend SeriesPoly operator*(const Scalar& s, SeriesPoly a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

  friend SeriesPoly operator/(const SeriesPoly& a, const SeriesPoly& b) {
    if (ScalarTraits<Scalar>::is_zero(b.c_[0]))
      throw DomainError("series division by a series with zero constant term");
    const int n = std::min(a.order(), b.order());
    SeriesPoly q(n);
    for (int k = 0; k <= n; ++k) {
      Scalar s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

 private:
  std::vector<Scalar> c_;
};

/// Term-wise antiderivative with zero constant; the result has order N + 1.
template <typename S>
SeriesPoly<S> integrate(const SeriesPoly<S>& a) {
  SeriesPoly<S> r(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) r[k + 1] = a[k] / S(k + 1);
  return r;
}

/// Term-wise derivative; the result has order max(N - 1, 0).
template <typename S>
SeriesPoly<S> differentiate(const SeriesPoly<S>& a) {
  SeriesPoly<S> r(std::max(a.order() - 1, 0));
  for (int k = 1; k <= a.order(); ++k) r[k - 1] = S(k) * a[k];
  return r;
}

/// outer(inner(x)); inner must have a zero constant term.
template <typename S>
SeriesPoly<S> compose(const SeriesPoly<S>& outer, const SeriesPoly<S>& inner) {
  if (!ScalarTraits<S>::is_zero(inner[0]))
    throw DomainError("series composition needs an inner series with zero constant term");
  const int n = std::min(outer.order(), inner.order());
  SeriesPoly<S> r = SeriesPoly<S>::constant(outer[n], n);
  const SeriesPoly<S> in = inner.truncated(n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * in;
    r[0] += outer[k];
  }
  return r;
}

/// f_k = (2k+1) 2^k h_{2k+1} / sqrt(g'(0)) from an odd h.
template <typename S>
SeriesPoly<S> f_coeffs_from_h(const SeriesPoly<S>& h_odd, const S& g_prime_0) {
  if (!(g_prime_0 > S(0))) throw DomainError("f_coeffs_from_h: g'(0) must be positive");
  for (int k = 0; k <= h_odd.order(); k += 2)
    if (!ScalarTraits<S>::is_zero(h_odd[k]))
      throw DomainError("f_coeffs_from_h: h has a nonzero even-index coefficient");
  const S root = ScalarTraits<S>::sqrt(g_prime_0);
  const int K = std::max((h_odd.order() - 1) / 2, 0);
  SeriesPoly<S> f(K);
  S pow2(1);
  for (int k = 0; k <= K && 2 * k + 1 <= h_odd.order(); ++k) {
    f[k] = S(2 * k + 1) * pow2 * h_odd[2 * k + 1] / root;
    pow2 *= S(2);
  }
  return f;
}

/// h_{2k+1} = lambda f_k / ((2k+1) 2^k); the result is odd with order 2K + 1.
template <typename S>
SeriesPoly<S> h_coeffs_from_f(const SeriesPoly<S>& f, const S& lambda) {
  if (!(lambda > S(0))) throw DomainError("h_coeffs_from_f: lambda must be positive");
  SeriesPoly<S> h(2 * f.order() + 1);
  S pow2(1);
  for (int k = 0; k <= f.order(); ++k) {
    h[2 * k + 1] = lambda * f[k] / (S(2 * k + 1) * pow2);
    pow2 *= S(2);
  }
  return h;
}

namespace detail {

// 2G - (x + F(G)) G' through `order`, with F the antiderivative of the
// polynomial f (coefficients of f beyond its order are zero).
template <typename S>
SeriesPoly<S> chouikha_defect(const SeriesPoly<S>& G, const SeriesPoly<S>& f, int order) {
  const SeriesPoly<S> Gn = G.truncated(order);
  const SeriesPoly<S> F = integrate(f.truncated(order)).truncated(order);
  const SeriesPoly<S> FG = compose(F, Gn);
  const SeriesPoly<S> dG = differentiate(G.truncated(order + 1)).truncated(order);
  const SeriesPoly<S> x = SeriesPoly<S>::variable(order);
  return S(2) * Gn - (x + FG) * dG;
}

}  // namespace detail

/// Taylor series of the isochronous potential G with Chouikha function f and
/// G(x) = lambda^2 x^2 / 2 + O(x^3), by matching coefficients of
/// 2G = (x + F(G)) G' degree by degree. The x^n coefficient satisfies
/// (2 - n) g_n = [F(G) G']_n, where the right side only involves g_2..g_{n-1}.
/// f is taken as a polynomial: coefficients beyond its order are zero.
template <typename S>
SeriesPoly<S> g_series_from_f(const SeriesPoly<S>& f, const S& lambda, int order) {
  if (order < 2) throw DomainError("g_series_from_f: order must be at least 2");
  if (!(lambda > S(0))) throw DomainError("g_series_from_f: lambda must be positive");
  SeriesPoly<S> G(order);
  G[2] = lambda * lambda / S(2);
  for (int n = 3; n <= order; ++n) {
    const SeriesPoly<S> Gn = G.truncated(n);
    const SeriesPoly<S> F = integrate(f.truncated(n)).truncated(n);
    const SeriesPoly<S> rhs = compose(F, Gn) * differentiate(G.truncated(n + 1)).truncated(n);
    G[n] = -rhs[n] / S(n - 2);
  }
  return G;
}

/// 2G - (x + F(G)) G' as a series through `order`; the zero series when G
/// solves the Chouikha equation for f.
template <typename S>
SeriesPoly<S> chouikha_series_residual(const SeriesPoly<S>& G, const SeriesPoly<S>& f) {
  return detail::chouikha_defect(G, f, G.order());
}

}  // namespace iso
