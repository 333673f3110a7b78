#include "iso/period.hpp"

#include <Eigen/Core>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "iso/ode.hpp"
#include "iso/quadrature.hpp"
#include "iso/urabe.hpp"

namespace iso {

double max_energy(const Potential& pot) { return std::min(pot.G(pot.x_min()), pot.G(pot.x_max())); }

std::pair<double, double> turning_points(const Potential& pot, double E) {
  const double e_max = max_energy(pot);
  if (!(E > 0.0) || !(E < e_max)) {
    std::ostringstream os;
    os << "energy " << E << " outside the admissible band (0, " << e_max << ")";
    throw DomainError(os.str());
  }
  const double X = std::sqrt(2.0 * E);
  return {x_of_big_X(pot, -X), x_of_big_X(pot, X)};
}

double period_quadrature(const Potential& pot, double E, int nodes) {
  if (nodes < 8) throw DomainError("period_quadrature: need at least 8 nodes");
  turning_points(pot, E);  // admissibility
  const double amp = std::sqrt(2.0 * E);
  const double inv_lambda = 1.0 / pot.lambda();
  auto integrand = [&](double theta) {
    const double X = amp * std::sin(theta);
    if (X == 0.0) return inv_lambda;
    const double x = x_of_big_X(pot, X);
    return X / pot.g(x);
  };
  const double half_pi = 0.5 * std::numbers::pi;
  return 2.0 * gauss_legendre(nodes).integrate(integrand, -half_pi, half_pi);
}

double period_ode(const Potential& pot, double E, double tol) {
  const auto [x_minus, x_plus] = turning_points(pot, E);
  (void)x_minus;
  const double omega = 2.0 * std::numbers::pi / pot.lambda();
  using State = Eigen::Vector2d;

  auto rhs = [&pot](double, const State& s) -> State {
    if (!pot.contains(s[0])) throw StepRejected{};
    return State(s[1], -pot.g(s[0]));
  };

  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol;
  opt.h_max = omega / 64.0;
  opt.h_init = omega * 1e-3;
  opt.h_min = 1e-13;

  bool found = false;
  double t0 = 0.0;
  State s0 = State::Zero();
  auto observer = [&](const DenseSegment<State>& seg) {
    const State& a = seg.r[0];
    const State b = seg.r[0] + seg.r[1];
    if (a[1] > 0.0 && b[1] <= 0.0 && b[0] > 0.0) {
      found = true;
      t0 = seg.t0;
      s0 = a;
      return false;
    }
    return true;
  };
  const auto res = integrate_dopri5(rhs, 0.0, State(x_plus, 0.0), 10.0 * omega, opt, observer);
  if (res.status == OdeStatus::StepUnderflow)
    throw DomainError("period_ode: trajectory escapes the potential's domain");
  if (!found) throw ConvergenceError("period_ode: no return to the section within 10 periods");
  if (!(s0[0] > 0.0)) throw ConvergenceError("period_ode: final step does not start at x > 0");

  // Last step with y as the independent variable: d(t, x)/dy = (1, y) / (-g(x)).
  auto rhs_y = [&pot](double y, const State& s) -> State {
    if (!pot.contains(s[1])) throw StepRejected{};
    const double inv = -1.0 / pot.g(s[1]);
    return State(inv, y * inv);
  };
  OdeOptions opt_y = opt;
  opt_y.h_max = std::numeric_limits<double>::infinity();
  opt_y.h_init = 0.0;
  const auto fin = integrate_dopri5(rhs_y, s0[1], State(t0, s0[0]), 0.0, opt_y);
  if (fin.status != OdeStatus::Completed) throw ConvergenceError("period_ode: section landing failed");
  return fin.y[0];
}

PeriodReport period_scan(const Potential& pot, const std::vector<double>& energies, double tol,
                         const ScanOptions& opt) {
  PeriodReport rep;
  rep.lambda = pot.lambda();
  rep.omega = 2.0 * std::numbers::pi / rep.lambda;
  rep.tolerance = tol;

  auto one = [&pot, &opt](double E) {
    PeriodSample s;
    s.E = E;
    std::tie(s.x_minus, s.x_plus) = turning_points(pot, E);
    s.T_quad = period_quadrature(pot, E, opt.nodes);
    s.T_ode = period_ode(pot, E, opt.ode_tol);
    return s;
  };

  if (opt.parallel && energies.size() > 1) {
    std::vector<std::future<PeriodSample>> jobs;
    jobs.reserve(energies.size());
    for (double E : energies) jobs.push_back(std::async(std::launch::async, one, E));
    for (auto& j : jobs) rep.samples.push_back(j.get());
  } else {
    for (double E : energies) rep.samples.push_back(one(E));
  }

  for (const auto& s : rep.samples) {
    rep.max_dev = std::max({rep.max_dev, std::abs(s.T_quad - rep.omega), std::abs(s.T_ode - rep.omega)});
    rep.max_disagreement = std::max(rep.max_disagreement, std::abs(s.T_quad - s.T_ode));
  }
  rep.isochronous = rep.max_dev <= tol;
  return rep;
}

std::vector<double> energy_grid(double lo, double hi, int n, bool log_spaced) {
  if (n < 1) throw DomainError("energy grid needs n >= 1");
  if (!(lo > 0.0) || hi < lo) throw DomainError("energy grid needs 0 < lo <= hi");
  if (n == 1) return {lo};
  std::vector<double> E(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    E[i] = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  E.back() = hi;
  return E;
}

}  // namespace iso
