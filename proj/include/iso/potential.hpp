#pragma once

#include <algorithm>
#include <optional>

#include "iso/jet.hpp"
#include "iso/scalar_fn.hpp"

namespace iso {

/// Restoring force g and its potential G(x) = int_0^x g on [x_min, x_max],
/// with g(0) = 0 and g'(0) = lambda^2 > 0.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual double lambda() const = 0;
  virtual double x_min() const = 0;
  virtual double x_max() const = 0;
  virtual double G(double x) const = 0;
  virtual double g(double x) const = 0;
  /// Taylor jet of G at x: [G, g, g'/2, g''/6, ...].
  virtual Jetd G_jet(double x, int order) const = 0;

  bool contains(double x) const { return x >= x_min() && x <= x_max(); }
  double achieved_half_width() const { return std::min(-x_min(), x_max()); }
  double dg(double x) const { return 2.0 * G_jet(x, 2)[2]; }
};

/// Potential given by a restoring force g (typically parsed from text). G is
/// taken from `G` when supplied, otherwise by adaptive quadrature of g.
class FunctionPotential final : public Potential {
 public:
  /// lambda defaults to sqrt(g'(0)); throws DomainError when g'(0) <= 0 or g(0) != 0.
  FunctionPotential(ScalarFn g, Interval domain, std::optional<double> lambda = std::nullopt,
                    std::optional<ScalarFn> G = std::nullopt);

  double lambda() const override { return lambda_; }
  double x_min() const override { return domain_.lo; }
  double x_max() const override { return domain_.hi; }
  double G(double x) const override;
  double g(double x) const override;
  Jetd G_jet(double x, int order) const override;

  const ScalarFn& force() const { return g_; }

 private:
  ScalarFn g_;
  std::optional<ScalarFn> G_;
  Interval domain_;
  double lambda_ = 1.0;
};

/// sqrt(g'(0)) by jet evaluation; DomainError when g'(0) <= 0.
double lambda_from_force(const ScalarFn& g);

}  // namespace iso
