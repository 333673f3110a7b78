#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with a PI step-size
// controller and the pair's continuous extension for dense output.
//
// State is double or a fixed-size Eigen column vector. Integration may run
// backwards (t_end < t0). The right-hand side may throw StepRejected when a
// trial stage lands outside the region where it is defined; the step is then
// halved, and integration stops with StepUnderflow once the step is too
// small to make progress.

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace iso {

struct StepRejected {};

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h_init = 0.0;  // 0: pick from the interval length
  double h_max = std::numeric_limits<double>::infinity();
  double h_min = 1e-14;  // relative to the interval length
  long max_steps = 1000000;
};

enum class OdeStatus { Completed, Stopped, StepUnderflow, MaxSteps };

namespace detail {

inline double abs_max(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

inline double scaled_sq(double e, double y0, double y1, const OdeOptions& o) {
  const double sk = o.atol + o.rtol * abs_max(y0, y1);
  return (e / sk) * (e / sk);
}

template <typename Derived>
double scaled_sq(const Eigen::MatrixBase<Derived>& e, const Eigen::MatrixBase<Derived>& y0,
                 const Eigen::MatrixBase<Derived>& y1, const OdeOptions& o) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) s += scaled_sq(e[i], y0[i], y1[i], o);
  return s / static_cast<double>(e.size());
}

}  // namespace detail

/// One accepted step with its continuous extension.
template <typename State>
struct DenseSegment {
  double t0 = 0.0, t1 = 0.0;
  std::array<State, 5> r{};

  double h() const { return t1 - t0; }

  State operator()(double t) const {
    const double s = (t - t0) / h(), s1 = 1.0 - s;
    return r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])));
  }

  State derivative(double t) const {
    const double s = (t - t0) / h(), s1 = 1.0 - s;
    const State pc = r[3] + s1 * r[4];
    const State d = r[1] + s1 * (r[2] + s * pc) - s * (r[2] + s * pc - s1 * (r[3] + (s1 - s) * r[4]));
    return d / h();
  }
};

template <typename State>
struct OdeResult {
  OdeStatus status = OdeStatus::Completed;
  double t = 0.0;
  State y{};
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Integrates y' = rhs(t, y) from (t0, y0) toward t_end. `observer` receives
/// each accepted DenseSegment and returns false to stop early.
template <typename State, typename Rhs, typename Observer>
OdeResult<State> integrate_dopri5(Rhs&& rhs, double t0, State y0, double t_end,
                                  const OdeOptions& opt, Observer&& observer) {
  constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0,
                   a42 = -56.0 / 15.0, a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0,
                   a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0,
                   a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0,
                   a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                   a76 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 5.0, facc2 = 0.1;

  OdeResult<State> res;
  res.t = t0;
  res.y = y0;
  const double span = t_end - t0;
  if (span == 0.0) return res;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double h_min = opt.h_min * std::abs(span);
  double h = opt.h_init > 0 ? opt.h_init : 1e-3 * std::abs(span);
  h = dir * std::min(h, opt.h_max);

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  ++res.evaluations;
  double facold = 1e-4;

  for (long steps = 0;; ++steps) {
    if (steps >= opt.max_steps) {
      res.status = OdeStatus::MaxSteps;
      break;
    }
    // Stretch a step that would leave a sliver behind; roundoff can otherwise
    // park t a few ulps short of t_end.
    const bool last = (t + 1.01 * h - t_end) * dir > 0;
    if (last) h = t_end - t;
    if (std::abs(h) < h_min) {
      res.status = OdeStatus::StepUnderflow;
      break;
    }

    State k2, k3, k4, k5, k6, k7, y1, ys;
    try {
      k2 = rhs(t + c2 * h, State(y + h * a21 * k1));
      k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
      k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
      k5 = rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
      ys = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      k6 = rhs(t + h, ys);
      y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      k7 = rhs(t + h, y1);
      res.evaluations += 6;
    } catch (const StepRejected&) {
      h *= 0.5;
      ++res.rejected;
      continue;
    }

    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double e = std::sqrt(detail::scaled_sq(err, y, y1, opt));
    const double fac11 = std::pow(std::max(e, 1e-300), expo1);

    if (e <= 1.0) {
      DenseSegment<State> seg;
      seg.t0 = t;
      seg.t1 = last ? t_end : t + h;
      seg.r[0] = y;
      seg.r[1] = y1 - y;
      seg.r[2] = h * k1 - seg.r[1];
      seg.r[3] = seg.r[1] - h * k7 - seg.r[2];
      seg.r[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      facold = std::max(e, 1e-4);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      const double h_new = dir * std::min(std::abs(h / fac), opt.h_max);

      t = last ? t_end : t + h;
      y = y1;
      k1 = k7;
      ++res.accepted;
      res.t = t;
      res.y = y;
      if (!observer(static_cast<const DenseSegment<State>&>(seg))) {
        res.status = OdeStatus::Stopped;
        return res;
      }
      if ((t - t_end) * dir >= 0) {
        res.status = OdeStatus::Completed;
        return res;
      }
      h = h_new;
    } else {
      h /= std::min(facc1, fac11 / safe);
      ++res.rejected;
    }
  }
  return res;
}

template <typename State, typename Rhs>
OdeResult<State> integrate_dopri5(Rhs&& rhs, double t0, State y0, double t_end,
                                  const OdeOptions& opt = {}) {
  return integrate_dopri5(std::forward<Rhs>(rhs), t0, std::move(y0), t_end, opt,
                          [](const DenseSegment<State>&) { return true; });
}

}  // namespace iso
