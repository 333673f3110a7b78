#pragma once

// Construction of the isochronous potential with prescribed Chouikha
// function f and frequency parameter lambda.
//
// With F(s) = int_0^s f, F(s) = s K(s) and G(x) = x^2 H(x), the Chouikha
// equation (G/g^2)' = f(G) is equivalent to 2G = (x + F(G)) G', which for
// x != 0 is the regular Cauchy problem
//
//   H'(x) = Phi(x, H) = -2 H^2 K(x^2 H) / (1 + x H K(x^2 H)),  H(0) = lambda^2 / 2.
//
// The solver integrates H in both directions from 0 and reconstructs
// g = 2xH + x^2 Phi(x, H) without numerical differentiation.

#include <vector>

#include "iso/ode.hpp"
#include "iso/potential.hpp"
#include "iso/scalar_fn.hpp"

namespace iso {

struct IsoProblem {
  ScalarFn f;  // Chouikha function on [0, eta]
  double lambda = 1.0;
  double half_width = 1.0;
  double tol = 1e-10;

  void validate() const;
};

/// F(s) = int_0^s f(u) du by adaptive Gauss-Legendre panels; F(0) = 0 exactly.
double big_F(const ScalarFn& f, double s, double tol = 1e-14);

/// K(x) = int_0^1 f(x t) dt, so that F(x) = x K(x); K(0) = f(0) exactly.
double hadamard_K(const ScalarFn& f, double x, double tol = 1e-10);

/// Taylor jet of K at x through `order`, using K^(m)(x) = int_0^1 t^m f^(m)(x t) dt.
Jetd hadamard_K_jet(const ScalarFn& f, double x, int order, double tol = 1e-10);

/// Right-hand side of the Cauchy problem. Throws SingularityError when the
/// denominator 1 + x H K(x^2 H) is not positive.
double phi(double x, double H, const ScalarFn& f, double tol = 1e-10);

/// Gauss-Legendre order used for K at a given tolerance.
int hadamard_nodes(double tol);

/// Why integration stopped on one side of the origin.
enum class StopReason { Reached, Singularity, DomainExhausted };

/// Dense solution H on [x_min, x_max] with G = x^2 H and g = G'.
///
/// Each side of the origin is integrated to its own extent; the symmetric
/// half width is the smaller of the two (achieved_half_width()).
class PotentialSolution final : public Potential {
 public:
  double lambda() const override { return lambda_; }
  double x_min() const override { return left_.empty() ? 0.0 : left_.back().t1; }
  double x_max() const override { return right_.empty() ? 0.0 : right_.back().t1; }
  double G(double x) const override { return x * x * H(x); }
  double g(double x) const override;
  Jetd G_jet(double x, int order) const override;

  double H(double x) const;
  /// H(x) by a fresh integration from the start of the step containing x, so
  /// the value carries the integrator's local error instead of the (lower
  /// order) dense interpolant's.
  double H_refined(double x) const;
  /// H'(x) = Phi(x, H(x)).
  double dH(double x) const;
  /// Taylor jet of H at x: H(x) from the dense output, higher coefficients by
  /// differentiating the Cauchy problem with jets.
  Jetd H_jet(double x, int order) const;

  const ScalarFn& f() const { return f_; }
  double tol() const { return tol_; }
  double requested_half_width() const { return requested_; }
  StopReason stop_left() const { return stop_left_; }
  StopReason stop_right() const { return stop_right_; }
  /// Step endpoints, strictly increasing, containing 0.
  std::vector<double> grid() const;
  long steps() const { return static_cast<long>(left_.size() + right_.size()); }

 private:
  friend PotentialSolution solve_chouikha(const IsoProblem& p);

  double phi_at(double x, double H) const;
  const DenseSegment<double>& segment(double x) const;

  ScalarFn f_;
  double lambda_ = 1.0;
  double tol_ = 1e-10;
  double requested_ = 0.0;
  int k_nodes_ = 20;
  std::vector<DenseSegment<double>> right_;  // t0 < t1, increasing
  std::vector<DenseSegment<double>> left_;   // t0 > t1, decreasing
  StopReason stop_left_ = StopReason::Reached;
  StopReason stop_right_ = StopReason::Reached;
};

/// Integrates the Cauchy problem from 0 toward +-half_width with the adaptive
/// 5(4) pair at local tolerance p.tol. Each side stops early where the Phi
/// denominator drops to 0.1 or f's domain is exhausted.
PotentialSolution solve_chouikha(const IsoProblem& p);

/// Denominator threshold at which integration stops.
inline constexpr double kPhiDenominatorFloor = 0.1;

/// r(x) = 2G(x) - (x + F(G(x))) g(x); zero exactly when the Chouikha equation holds.
double chouikha_residual(const Potential& pot, const ScalarFn& f, double x);

}  // namespace iso
