#include "iso/urabe.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "iso/quadrature.hpp"
#include "iso/roots.hpp"

namespace iso {

double x_capital(const Potential& pot, double x) {
  if (x == 0.0) return 0.0;
  const double G = pot.G(x);
  if (G < 0.0) {
    std::ostringstream os;
    os << "G(" << x << ") = " << G << " is negative; not a potential with a minimum at 0";
    throw DomainError(os.str());
  }
  return std::copysign(std::sqrt(2.0 * G), x);
}

Interval x_capital_range(const Potential& pot) {
  return {x_capital(pot, pot.x_min()), x_capital(pot, pot.x_max())};
}

double x_of_big_X(const Potential& pot, double X) {
  if (X == 0.0) return 0.0;
  const double end = X > 0 ? pot.x_max() : pot.x_min();
  const double X_end = x_capital(pot, end);
  if (std::abs(X) > std::abs(X_end)) {
    std::ostringstream os;
    os << "X = " << X << " out of range (limit " << X_end << ")";
    throw DomainError(os.str());
  }
  if (X == X_end) return end;
  const double lam = pot.lambda();
  // Solve X(x) - X = 0; X'(x) = g(x) / X(x) tends to lambda at the origin.
  auto fd = [&](double x) -> std::pair<double, double> {
    if (x == 0.0) return {-X, lam};
    const double Xx = x_capital(pot, x);
    return {Xx - X, Xx != 0.0 ? pot.g(x) / Xx : lam};
  };
  RootOptions opt;
  opt.x_tol = 1e-15;
  return newton_bracketed(fd, 0.0, end, opt);
}

ScalarFn h_from_f(const ScalarFn& f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("h_from_f: lambda must be positive");
  const double eta = f.domain().hi;
  const double s_max = std::isfinite(eta) ? std::sqrt(2.0 * eta) : eta;
  const int smooth = f.smoothness() == ScalarFn::kUnbounded ? ScalarFn::kUnbounded : f.smoothness() + 1;

  auto jet = [f, lambda](double s, int order) {
    Jetd h(order);
    const double a = std::abs(s);
    if (a > 0.0) {
      AdaptiveOptions opt;
      opt.abs_tol = 1e-300;
      opt.rel_tol = 1e-14;
      const double I = integrate_adaptive([&f](double q) { return f(0.5 * q * q); }, 0.0, a, opt);
      h[0] = std::copysign(lambda * I, s);
    }
    if (order >= 1) {
      // h'(s) = lambda f(s^2 / 2), expanded with jets.
      const Jetd q = Jetd::variable(s, order - 1);
      const Jetd u = 0.5 * q * q;
      const Jetd dh = compose(f.jet(u[0], order - 1), u);
      for (int k = 0; k < order; ++k) h[k + 1] = lambda * dh[k] / (k + 1);
    }
    return h;
  };
  std::ostringstream os;
  os << "h_from_f[" << f.describe() << ", lambda=" << lambda << "]";
  return ScalarFn::from_jet_fn(jet, Interval{-s_max, s_max}, smooth, os.str());
}

ScalarFn f_from_h(const ScalarFn& h, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("f_from_h: lambda must be positive");
  if (h.smoothness() < 1) throw DomainError("f_from_h: derivative of h unavailable");
  const double u_max = std::min(-h.domain().lo, h.domain().hi);
  const double s_max = std::isfinite(u_max) ? 0.5 * u_max * u_max : u_max;
  const int hs = h.smoothness();
  const int smooth = hs == ScalarFn::kUnbounded ? ScalarFn::kUnbounded : hs - 1;

  auto jet = [h, lambda, hs](double s, int order) {
    if (s < 0.0) throw DomainError("f_from_h: s must be non-negative");
    Jetd f(order);
    if (s == 0.0) {
      // h' is even: h'(u) = sum c_2k u^2k, so f(s) = sum c_2k (2s)^k / lambda.
      if (hs != ScalarFn::kUnbounded && 2 * order + 1 > hs)
        throw DomainError("f_from_h: derivative order at 0 exceeds smoothness of h");
      const Jetd hj = h.jet(0.0, 2 * order + 1);
      double pow2 = 1.0;
      for (int k = 0; k <= order; ++k) {
        f[k] = pow2 * (2 * k + 1) * hj[2 * k + 1] / lambda;
        pow2 *= 2.0;
      }
      return f;
    }
    const Jetd u = sqrt(2.0 * Jetd::variable(s, order));
    const Jetd hj = h.jet(u[0], order + 1);
    Jetd dh(order);
    for (int k = 0; k <= order; ++k) dh[k] = (k + 1) * hj[k + 1];
    return compose(dh, u) / lambda;
  };
  std::ostringstream os;
  os << "f_from_h[" << h.describe() << ", lambda=" << lambda << "]";
  return ScalarFn::from_jet_fn(jet, Interval{0.0, s_max}, smooth, os.str());
}

Jetd urabe_h_jet_in_x(const Potential& pot, double x, int order) {
  const double lam = pot.lambda();
  if (x == 0.0) {
    // G = x^2 Q, g = x P: X / g = sqrt(2 Q) / P has no 0/0.
    const Jetd Gj = pot.G_jet(0.0, order + 2);
    Jetd Q(order), P(order);
    for (int k = 0; k <= order; ++k) {
      Q[k] = Gj[k + 2];
      P[k] = (k + 2) * Gj[k + 2];
    }
    return lam * sqrt(2.0 * Q) / P - 1.0;
  }
  const Jetd Gj = pot.G_jet(x, order + 1);
  Jetd G(order), g(order);
  for (int k = 0; k <= order; ++k) {
    G[k] = Gj[k];
    g[k] = (k + 1) * Gj[k + 1];
  }
  if (g[0] == 0.0) throw DomainError("g vanishes away from the origin; not a center configuration");
  Jetd X = sqrt(2.0 * G);
  if (x < 0.0) X = -X;
  return lam * X / g - 1.0;
}

ScalarFn h_from_g(const Potential& pot, const UrabeOptions& opt) {
  const int n = opt.points_per_side;
  if (n < 4) throw DomainError("h_from_g: need at least 4 points per side");
  const Interval r = x_capital_range(pot);
  const double Xm = std::min(-r.lo, r.hi);
  const double lam = pot.lambda();
  std::vector<double> val(2 * n + 1), slope(2 * n + 1);
  for (int i = -n; i <= n; ++i) {
    const double X = i == n ? Xm : i == -n ? -Xm : Xm * i / n;
    const double x = x_of_big_X(pot, X);
    const Jetd hx = urabe_h_jet_in_x(pot, x, 1);
    // dX/dx = g / X, which tends to lambda at 0.
    const double dXdx = x == 0.0 ? lam : pot.g(x) / X;
    val[i + n] = x == 0.0 ? 0.0 : lam * X / pot.g(x) - 1.0;
    slope[i + n] = hx[1] / dXdx;
  }
  // Error bound: Hermite interpolant against direct evaluation at cell midpoints.
  ScalarFn probe = ScalarFn::from_samples(-Xm, Xm, val, slope);
  double err = 0.0;
  for (int i = -n; i < n; ++i) {
    const double X = Xm * (i + 0.5) / n;
    const double x = x_of_big_X(pot, X);
    err = std::max(err, std::abs(probe(X) - (lam * X / pot.g(x) - 1.0)));
  }
  return ScalarFn::from_samples(-Xm, Xm, std::move(val), std::move(slope), err);
}

ScalarFn odd_part(const ScalarFn& h) {
  const double m = std::min(-h.domain().lo, h.domain().hi);
  auto jet = [h](double s, int order) {
    const Jetd a = h.jet(s, order);
    Jetd b = h.jet(-s, order);
    for (int k = 1; k <= order; k += 2) b[k] = -b[k];
    return 0.5 * (a - b);
  };
  return ScalarFn::from_jet_fn(jet, Interval{-m, m}, h.smoothness(), "odd_part[" + h.describe() + "]");
}

double oddness_defect(const ScalarFn& h, int n) {
  const double m = std::min(-h.domain().lo, h.domain().hi);
  double d = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double s = m * i / n;
    d = std::max(d, std::abs(h(s) + h(-s)));
  }
  return d;
}

double urabe_residual(const Potential& pot, const ScalarFn& h, double x) {
  const double X = x_capital(pot, x);
  return pot.g(x) * (1.0 + h(X)) - pot.lambda() * X;
}

LimitCheck check_limit_2_2(const Potential& pot) {
  LimitCheck out;
  const double delta = pot.achieved_half_width();
  const double inv = 1.0 / pot.lambda();
  for (int k = 1; k <= 6; ++k) {
    const double x = delta * std::pow(10.0, -k);
    double dev = 0.0;
    for (const double s : {x, -x}) dev = std::max(dev, std::abs(x_capital(pot, s) / pot.g(s) - inv));
    out.x.push_back(x);
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

}  // namespace iso
