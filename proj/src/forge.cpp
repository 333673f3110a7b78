#include "iso/forge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iso/quadrature.hpp"

namespace iso {

void IsoProblem::validate() const {
  if (!f.valid()) throw DomainError("IsoProblem: f is missing");
  if (!(lambda > 0.0)) throw DomainError("IsoProblem: lambda must be positive");
  if (!(half_width > 0.0)) throw DomainError("IsoProblem: half_width must be positive");
  if (!(tol > 0.0)) throw DomainError("IsoProblem: tol must be positive");
  if (!f.domain().contains(0.0)) throw DomainError("IsoProblem: f must be defined at 0");
}

int hadamard_nodes(double tol) {
  if (tol >= 1e-6) return 12;
  if (tol >= 1e-10) return 20;
  return 28;
}

double big_F(const ScalarFn& f, double s, double tol) {
  if (s < 0.0) throw DomainError("F(s) needs s >= 0");
  if (s == 0.0) return 0.0;
  if (!f.domain().contains(s)) throw DomainError("F(s): s outside the domain of f");
  AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = 0.0;
  return integrate_adaptive([&f](double u) { return f(u); }, 0.0, s, opt);
}

double hadamard_K(const ScalarFn& f, double x, double tol) {
  if (x < 0.0) throw DomainError("K(x) needs x >= 0");
  if (x == 0.0) return f(0.0);
  if (!f.domain().contains(x)) throw DomainError("K(x): x outside the domain of f");
  return gauss_legendre(hadamard_nodes(tol)).integrate([&](double t) { return f(x * t); }, 0.0, 1.0);
}

Jetd hadamard_K_jet(const ScalarFn& f, double x, int order, double tol) {
  if (x < 0.0) throw DomainError("K(x) needs x >= 0");
  Jetd k(order);
  if (x == 0.0) {
    const Jetd fj = f.jet(0.0, order);
    for (int m = 0; m <= order; ++m) k[m] = fj[m] / (m + 1);
    return k;
  }
  if (!f.domain().contains(x)) throw DomainError("K(x): x outside the domain of f");
  const GaussLegendreRule& rule = gauss_legendre(hadamard_nodes(tol));
  for (int i = 0; i < rule.size(); ++i) {
    const double t = 0.5 * (rule.nodes[i] + 1.0);
    const double w = 0.5 * rule.weights[i];
    const Jetd fj = f.jet(x * t, order);
    double tm = 1.0;
    for (int m = 0; m <= order; ++m) {
      k[m] += w * tm * fj[m];
      tm *= t;
    }
  }
  return k;
}

double phi(double x, double H, const ScalarFn& f, double tol) {
  const double u = x * x * H;
  if (u < 0.0) throw DomainError("Phi: x^2 H must be non-negative");
  const double K = hadamard_K(f, u, tol);
  const double den = 1.0 + x * H * K;
  if (!(den > 0.0)) {
    std::ostringstream os;
    os << "Phi denominator 1 + xHK = " << den << " at x = " << x << " is not positive";
    throw SingularityError(os.str());
  }
  return -2.0 * H * H * K / den;
}

namespace {

// Phi over jets, given the jet of K at u0 = x0^2 H0.
Jetd phi_jet(const Jetd& x, const Jetd& H, const Jetd& k_at_u0) {
  const Jetd u = x * x * H;
  const Jetd K = compose(k_at_u0, u);
  return -2.0 * H * H * K / (1.0 + x * H * K);
}

}  // namespace

double PotentialSolution::phi_at(double x, double H) const { return phi(x, H, f_, tol_); }

const DenseSegment<double>& PotentialSolution::segment(double x) const {
  if (!contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside solved interval [" << x_min() << ", " << x_max() << "]";
    throw DomainError(os.str());
  }
  if (x >= 0.0) {
    auto it = std::lower_bound(right_.begin(), right_.end(), x,
                               [](const DenseSegment<double>& s, double v) { return s.t1 < v; });
    return it == right_.end() ? right_.back() : *it;
  }
  auto it = std::lower_bound(left_.begin(), left_.end(), x,
                             [](const DenseSegment<double>& s, double v) { return s.t1 > v; });
  return it == left_.end() ? left_.back() : *it;
}

double PotentialSolution::H(double x) const {
  if (x == 0.0) return 0.5 * lambda_ * lambda_;
  return segment(x)(x);
}

double PotentialSolution::H_refined(double x) const {
  if (x == 0.0) return 0.5 * lambda_ * lambda_;
  const DenseSegment<double>& s = segment(x);
  if (x == s.t0) return s.r[0];
  OdeOptions opt;
  opt.rtol = tol_;
  opt.atol = tol_;
  opt.h_init = std::abs(x - s.t0);
  auto rhs = [this](double t, double H) {
    try {
      return phi_at(t, H);
    } catch (const SingularityError&) {
      throw StepRejected{};
    }
  };
  const auto res = integrate_dopri5(rhs, s.t0, s.r[0], x, opt);
  if (res.status != OdeStatus::Completed) {
    std::ostringstream os;
    os << "H_refined: integration from " << s.t0 << " to " << x << " failed (status " << static_cast<int>(res.status) << ")";
    throw ConvergenceError(os.str());
  }
  return res.y;
}

double PotentialSolution::dH(double x) const { return phi_at(x, H(x)); }

double PotentialSolution::g(double x) const {
  const double h = H(x);
  return 2.0 * x * h + x * x * phi_at(x, h);
}

Jetd PotentialSolution::H_jet(double x, int order) const {
  Jetd Hj(order, H(x));
  if (order == 0) return Hj;
  const Jetd kj = hadamard_K_jet(f_, x * x * Hj[0], order, tol_);
  const Jetd xj = Jetd::variable(x, order);
  for (int k = 0; k < order; ++k) {
    const Jetd ph = phi_jet(xj, Hj, kj);
    Hj[k + 1] = ph[k] / (k + 1);
  }
  return Hj;
}

Jetd PotentialSolution::G_jet(double x, int order) const {
  const Jetd xj = Jetd::variable(x, order);
  return xj * xj * H_jet(x, order);
}

std::vector<double> PotentialSolution::grid() const {
  std::vector<double> g;
  g.reserve(left_.size() + right_.size() + 1);
  for (auto it = left_.rbegin(); it != left_.rend(); ++it) g.push_back(it->t1);
  g.push_back(0.0);
  for (const auto& s : right_) g.push_back(s.t1);
  return g;
}

PotentialSolution solve_chouikha(const IsoProblem& p) {
  p.validate();
  PotentialSolution sol;
  sol.f_ = p.f;
  sol.lambda_ = p.lambda;
  sol.tol_ = p.tol;
  sol.requested_ = p.half_width;
  sol.k_nodes_ = hadamard_nodes(p.tol);

  const double H0 = 0.5 * p.lambda * p.lambda;
  const double eta = p.f.domain().hi;

  for (const double dir : {1.0, -1.0}) {
    StopReason why = StopReason::Reached;
    auto rhs = [&](double x, double H) {
      const double u = x * x * H;
      if (!(H > 0.0) || !std::isfinite(H) || u > eta) {
        why = StopReason::DomainExhausted;
        throw StepRejected{};
      }
      const double K = hadamard_K(p.f, u, p.tol);
      const double den = 1.0 + x * H * K;
      if (den <= kPhiDenominatorFloor) {
        why = StopReason::Singularity;
        throw StepRejected{};
      }
      return -2.0 * H * H * K / den;
    };

    OdeOptions opt;
    opt.rtol = p.tol;
    opt.atol = p.tol;
    opt.h_max = p.half_width / 64.0;
    opt.h_init = std::min(opt.h_max, 1e-3 * p.half_width);
    opt.h_min = 1e-10;

    auto& segs = dir > 0 ? sol.right_ : sol.left_;
    auto res = integrate_dopri5(rhs, 0.0, H0, dir * p.half_width, opt,
                                [&segs](const DenseSegment<double>& s) {
                                  segs.push_back(s);
                                  return true;
                                });
    if (res.status == OdeStatus::MaxSteps) throw ConvergenceError("solve_chouikha: step limit reached");
    if (res.status == OdeStatus::Completed) why = StopReason::Reached;
    if (segs.empty()) {
      if (why == StopReason::Singularity)
        throw Error("solve_chouikha: internal error, singular right-hand side at x = 0");
      throw DomainError("solve_chouikha: f domain exhausted before any progress");
    }
    (dir > 0 ? sol.stop_right_ : sol.stop_left_) = why;
  }
  return sol;
}

double chouikha_residual(const Potential& pot, const ScalarFn& f, double x) {
  const double G = pot.G(x);
  const double g = pot.g(x);
  return 2.0 * G - (x + big_F(f, G)) * g;
}

}  // namespace iso
