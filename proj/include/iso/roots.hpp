#pragma once

#include <cmath>
#include <utility>

#include "iso/error.hpp"

namespace iso {

struct RootOptions {
  double x_tol = 1e-15;  // relative bracket width
  int max_iter = 200;
};

/// Safeguarded Newton on a sign-changing bracket [a, b]. `fd(x)` returns the
/// pair (f(x), f'(x)). A Newton step that leaves the current bracket, or does
/// not shrink it fast enough, is replaced by bisection.
template <typename FD>
double newton_bracketed(FD&& fd, double a, double b, const RootOptions& opt = {}) {
  const double fa = fd(a).first;
  if (fa == 0.0) return a;
  const double fb = fd(b).first;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw DomainError("root is not bracketed");
  // Orient so that f(lo) < 0 < f(hi).
  double lo = fa < 0 ? a : b, hi = fa < 0 ? b : a;
  double x = 0.5 * (a + b);
  double f_prev = std::max(std::abs(fa), std::abs(fb));
  for (int it = 0; it < opt.max_iter; ++it) {
    auto [fx, dx] = fd(x);
    if (fx == 0.0) return x;
    (fx < 0 ? lo : hi) = x;
    if (std::abs(hi - lo) <= opt.x_tol * std::max(std::abs(lo), std::abs(hi))) return x;
    const double next = dx != 0.0 ? x - fx / dx : std::nan("");
    const bool inside = std::isfinite(next) && (next - lo) * (next - hi) < 0;
    if (inside && std::abs(next - x) <= 2e-16 * std::abs(x)) return next;
    // Insufficient decrease of |f| counts as a failed Newton step.
    x = (inside && std::abs(fx) <= 0.5 * f_prev) ? next : 0.5 * (lo + hi);
    f_prev = std::abs(fx);
  }
  throw ConvergenceError("bracketed Newton did not converge");
}

}  // namespace iso
