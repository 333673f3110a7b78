#include "iso/potential.hpp"

#include <cmath>
#include <sstream>

#include "iso/quadrature.hpp"

namespace iso {

double lambda_from_force(const ScalarFn& g) {
  const Jetd j = g.jet(0.0, 1);
  if (!(j[1] > 0.0)) {
    std::ostringstream os;
    os << "g'(0) = " << j[1] << " is not positive; the origin is not a center of the required type";
    throw DomainError(os.str());
  }
  return std::sqrt(j[1]);
}

FunctionPotential::FunctionPotential(ScalarFn g, Interval domain, std::optional<double> lambda,
                                     std::optional<ScalarFn> G)
    : g_(std::move(g)), G_(std::move(G)), domain_(domain) {
  if (!(domain_.lo < 0.0 && domain_.hi > 0.0) || !std::isfinite(domain_.lo) ||
      !std::isfinite(domain_.hi))
    throw DomainError("potential domain must be a finite interval around 0");
  const double g0 = g_(0.0);
  if (std::abs(g0) > 1e-12) {
    std::ostringstream os;
    os << "g(0) = " << g0 << " is not zero";
    throw DomainError(os.str());
  }
  const double lam_from_g = lambda_from_force(g_);
  lambda_ = lambda.value_or(lam_from_g);
  if (!(lambda_ > 0.0)) throw DomainError("lambda must be positive");
}

double FunctionPotential::g(double x) const {
  if (!contains(x)) throw DomainError("x outside potential domain");
  return g_(x);
}

double FunctionPotential::G(double x) const {
  if (!contains(x)) throw DomainError("x outside potential domain");
  if (G_) return (*G_)(x);
  if (x == 0.0) return 0.0;
  AdaptiveOptions opt;
  // g(u) from text like sqrt(1+u)-1 carries rounding noise of order
  // eps * g'(0) near 0, so the integral cannot beat eps * g'(0) * |x|.
  opt.abs_tol = 1e-15 * lambda_ * lambda_ * std::abs(x);
  opt.rel_tol = 1e-14;
  opt.max_depth = 30;
  return integrate_adaptive([this](double u) { return g_(u); }, 0.0, x, opt);
}

Jetd FunctionPotential::G_jet(double x, int order) const {
  Jetd out(order, G(x));
  if (order == 0) return out;
  const Jetd gj = g_.jet(x, order - 1);
  for (int k = 1; k <= order; ++k) out[k] = gj[k - 1] / k;
  return out;
}

}  // namespace iso
