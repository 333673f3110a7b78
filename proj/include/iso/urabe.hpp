#pragma once

// The X change of variable, the Urabe form g = lambda X / (1 + h(X)), and
// the two-way correspondence between the Urabe function h and the Chouikha
// function f:
//
//   h(s) = lambda int_0^s f(q^2 / 2) dq,      f(s) = h'(sqrt(2 s)) / lambda.

#include <vector>

#include "iso/potential.hpp"
#include "iso/scalar_fn.hpp"

namespace iso {

/// X(x) = sign(x) sqrt(2 G(x)); X(0) = 0.
double x_capital(const Potential& pot, double x);

/// Inverse of x_capital: the x with X(x) = X and sign(x) = sign(X).
double x_of_big_X(const Potential& pot, double X);

/// Range of X over the potential's domain, [X(x_min), X(x_max)].
Interval x_capital_range(const Potential& pot);

/// Odd h from f; values by adaptive quadrature, derivatives exact via
/// h'(s) = lambda f(s^2 / 2). Domain |s| <= sqrt(2 eta) for f on [0, eta].
ScalarFn h_from_f(const ScalarFn& f, double lambda);

/// f(s) = h'(sqrt(2 s)) / lambda on s >= 0; at s = 0 uses h'(0).
ScalarFn f_from_h(const ScalarFn& h, double lambda);

struct UrabeOptions {
  int points_per_side = 512;
};

/// Urabe function of a potential, h(X) = lambda X / g(x(X)) - 1, sampled on
/// a uniform X grid with exact slopes and cubic Hermite interpolation. The
/// grid covers [-Xm, Xm] with Xm the smaller one-sided X range, and h(0) = 0
/// through the limit X/g -> 1/lambda. Throws DomainError where g vanishes
/// away from the origin.
ScalarFn h_from_g(const Potential& pot, const UrabeOptions& opt = {});

/// Odd part (h(s) - h(-s)) / 2 on the symmetric part of h's domain.
ScalarFn odd_part(const ScalarFn& h);

/// max |h(s) + h(-s)| over `n` uniformly spaced s in (0, s_max].
double oddness_defect(const ScalarFn& h, int n = 512);

/// g(x) (1 + h(X(x))) - lambda X(x); zero where the Urabe criterion holds.
double urabe_residual(const Potential& pot, const ScalarFn& h, double x);

struct LimitCheck {
  std::vector<double> x;          // sampled points (positive side), 10^-k * delta
  std::vector<double> deviation;  // max over +-x of |X/g - 1/lambda|, k = 1..6
  double max_deviation = 0.0;
};

/// Samples X/g at x = +-10^-k delta*, k = 1..6, against its limit 1/lambda.
LimitCheck check_limit_2_2(const Potential& pot);

/// Jet in x of the Urabe function h(X(x)) at x, including x = 0.
Jetd urabe_h_jet_in_x(const Potential& pot, double x, int order);

}  // namespace iso
