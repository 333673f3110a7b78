#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "iso/error.hpp"

namespace iso {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Sum of w_i f(x_i) mapped onto [a, b].
  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(c + r * nodes[i]);
    return r * s;
  }
};

/// n-point rule (n >= 1), computed once and cached; thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_depth = 40;
  int points = 15;  // nodes per panel
};

/// Adaptive Gauss-Legendre panels: a panel is accepted when its one-panel
/// estimate agrees with the sum over its two halves.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});

}  // namespace iso
