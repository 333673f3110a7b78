#pragma once

// Numerical Taylor coefficients of a computed solution, used to cross-check
// the series recursion without sharing any code with it.

#include <functional>
#include <utility>
#include <vector>

#include "iso/forge.hpp"

namespace iso {

struct ExtractionOptions {
  int degree = 16;     // least-squares polynomial degree in the scaled variable
  int nodes = 48;      // Chebyshev nodes per radius
  int radii = 8;       // radii r0, r0/sqrt2, ..., r0/sqrt2^(radii-1)
};

struct TaylorEstimate {
  std::vector<double> coeffs;  // c_0..c_order
  double radius = 0.0;         // radius whose estimate was kept
  double spread = 0.0;         // max change against the next smaller radius, relative to max|c|/1000 floor
};

/// Taylor coefficients at 0 of a function known through values and slopes.
/// For each radius r, fits a polynomial to (value, slope) data at Chebyshev
/// nodes on [-r, r] by least squares. Going down from r0, the spread between
/// successive radii shrinks while truncation dominates and grows once noise
/// does; the estimate at the first minimum of the spread is kept.
TaylorEstimate extract_taylor(const std::function<std::pair<double, double>(double)>& value_slope,
                              int order, double r0, const ExtractionOptions& opt = {});

/// Taylor coefficients of G = x^2 H for a solved potential, through `order`.
TaylorEstimate extract_G_coefficients(const PotentialSolution& sol, int order,
                                      const ExtractionOptions& opt = {});

}  // namespace iso
