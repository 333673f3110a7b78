#pragma once

// Orbital periods of x'' + g(x) = 0 around the origin, computed two
// independent ways, and a scan over energies comparing them with 2 pi / lambda.

#include <utility>
#include <vector>

#include "iso/potential.hpp"

namespace iso {

/// Roots x_minus < 0 < x_plus of G(x) = E. Needs 0 < E < min(G(x_min), G(x_max)).
std::pair<double, double> turning_points(const Potential& pot, double E);

/// Largest admissible energy, min(G(x_min), G(x_max)).
double max_energy(const Potential& pot);

/// T = 2 int_{-pi/2}^{pi/2} (X/g)(x(sqrt(2E) sin theta)) dtheta by an
/// n-point Gauss-Legendre rule (n >= 8). X/g at the origin is 1/lambda.
double period_quadrature(const Potential& pot, double E, int nodes = 64);

/// Return time of the orbit started at (x_plus, 0), integrating
/// x' = y, y' = -g(x). The final crossing of {y = 0, x > 0} is located by
/// switching the independent variable to y for the last step.
double period_ode(const Potential& pot, double E, double tol = 1e-12);

struct PeriodSample {
  double E = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double T_quad = 0.0;
  double T_ode = 0.0;
};

struct PeriodReport {
  double lambda = 0.0;
  double omega = 0.0;  // 2 pi / lambda
  std::vector<PeriodSample> samples;
  double max_dev = 0.0;       // max |T - omega| over both methods
  double max_disagreement = 0.0;  // max |T_quad - T_ode|
  double tolerance = 0.0;
  bool isochronous = false;  // max_dev <= tolerance
};

struct ScanOptions {
  int nodes = 64;
  double ode_tol = 1e-12;
  bool parallel = true;
};

/// Periods at every energy of `energies`; verdict true iff max_dev <= tol.
PeriodReport period_scan(const Potential& pot, const std::vector<double>& energies, double tol,
                         const ScanOptions& opt = {});

/// n energies on [lo, hi], log-spaced or linear.
std::vector<double> energy_grid(double lo, double hi, int n, bool log_spaced = true);

}  // namespace iso
