#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "iso/error.hpp"
#include "iso/expr.hpp"
#include "iso/jet.hpp"

namespace iso {

/// Closed interval of validity [lo, hi].
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  static Interval all() { return {}; }
  static Interval symmetric(double half_width) { return {-half_width, half_width}; }
};

/// Source of a ScalarFn. Implementations are immutable.
class ScalarSource {
 public:
  virtual ~ScalarSource() = default;
  virtual double value(double x) const = 0;
  virtual Jetd jet(double x, int order) const = 0;
  /// Highest derivative order that jet() supports.
  virtual int smoothness() const = 0;
  /// Recorded bound on the representation error (0 for exact sources).
  virtual double error_bound() const { return 0.0; }
  virtual std::string describe() const = 0;
};

/// Evaluable smooth function of one real variable on an interval.
///
/// Wraps either a bound expression, a sampled curve with cubic local
/// interpolation, a truncated power series, or an internal closure. Copies
/// share the immutable source.
class ScalarFn {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  ScalarFn() = default;
  ScalarFn(std::shared_ptr<const ScalarSource> source, Interval domain)
      : src_(std::move(source)), domain_(domain) {}

  static ScalarFn from_expr(BoundExpr e, Interval domain = Interval::all());
  static ScalarFn parse(std::string_view text, const ParamMap& params = {},
                        Interval domain = Interval::all());
  static ScalarFn constant(double c, Interval domain = Interval::all());
  /// Power series sum c[k] (x - center)^k.
  static ScalarFn from_coeffs(std::vector<double> coeffs, double center = 0.0,
                              Interval domain = Interval::all());
  /// Closure-backed function; `jet(x, order)` must honor `smoothness`.
  static ScalarFn from_jet_fn(std::function<Jetd(double, int)> jet, Interval domain,
                              int smoothness, std::string description = "closure");

  /// Samples `fn` (value and slope through jet order 1) on a uniform grid of
  /// n + 1 points and interpolates with cubic Hermite pieces. The error bound
  /// is measured against `fn` at every cell midpoint.
  static ScalarFn sample(const std::function<Jetd(double, int)>& fn, double lo, double hi, int n);

  /// Uniform-grid data; with slopes the interpolant is cubic Hermite, without
  /// it is the local four-point cubic. `error_bound` is stored as given.
  static ScalarFn from_samples(double lo, double hi, std::vector<double> values,
                               std::vector<double> slopes = {}, double error_bound = 0.0);

  bool valid() const { return static_cast<bool>(src_); }
  const Interval& domain() const { return domain_; }
  int smoothness() const { return src_->smoothness(); }
  double error_bound() const { return src_->error_bound(); }
  std::string describe() const { return src_->describe(); }
  const ScalarSource& source() const { return *src_; }

  double operator()(double x) const {
    check_domain(x);
    return src_->value(x);
  }
  Jetd jet(double x, int order) const;

  ScalarFn with_domain(Interval d) const { return ScalarFn(src_, d); }

 private:
  void check_domain(double x) const;

  std::shared_ptr<const ScalarSource> src_;
  Interval domain_;
};

/// Taylor coefficients f^(k)(x0)/k!, k = 0..order.
inline Jetd eval_jet(const ScalarFn& f, double x0, int order) { return f.jet(x0, order); }

}  // namespace iso
