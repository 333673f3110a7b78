#include "iso/extraction.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace iso {

namespace {

std::vector<double> fit_at_radius(const std::function<std::pair<double, double>(double)>& vs,
                                  int order, double r, const ExtractionOptions& opt) {
  const int M = opt.nodes, D = opt.degree;
  Eigen::MatrixXd A(2 * M, D + 1);
  Eigen::VectorXd b(2 * M);
  for (int i = 0; i < M; ++i) {
    const double t = std::cos(std::numbers::pi * (i + 0.5) / M);
    const auto [v, s] = vs(r * t);
    double tp = 1.0;
    for (int j = 0; j <= D; ++j) {
      A(i, j) = tp;
      tp *= t;
    }
    // Slope rows in the scaled variable: d/dt p(t) = r * f'(r t).
    A(M + i, 0) = 0.0;
    tp = 1.0;
    for (int j = 1; j <= D; ++j) {
      A(M + i, j) = j * tp;
      tp *= t;
    }
    b[i] = v;
    b[M + i] = r * s;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  std::vector<double> out(order + 1);
  double rp = 1.0;
  for (int j = 0; j <= order; ++j) {
    out[j] = c[j] / rp;
    rp *= r;
  }
  return out;
}

double rel_change(const std::vector<double>& a, const std::vector<double>& b) {
  double big = 0.0;
  for (double v : a) big = std::max(big, std::abs(v));
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double scale = std::max({std::abs(a[j]), std::abs(b[j]), 1e-3 * big});
    if (scale == 0.0) continue;
    m = std::max(m, std::abs(a[j] - b[j]) / scale);
  }
  return m;
}

}  // namespace

TaylorEstimate extract_taylor(const std::function<std::pair<double, double>(double)>& value_slope,
                              int order, double r0, const ExtractionOptions& opt) {
  if (order > opt.degree) throw DomainError("extract_taylor: order exceeds fit degree");
  std::vector<std::vector<double>> est;
  std::vector<double> radius;
  double r = r0;
  for (int k = 0; k < opt.radii; ++k, r *= std::numbers::sqrt2 / 2) {
    est.push_back(fit_at_radius(value_slope, order, r, opt));
    radius.push_back(r);
  }
  TaylorEstimate best;
  best.coeffs = est[0];
  best.radius = radius[0];
  best.spread = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < est.size(); ++k) {
    const double d = rel_change(est[k], est[k + 1]);
    if (d >= best.spread) break;
    best.spread = d;
    best.coeffs = est[k];
    best.radius = radius[k];
  }
  return best;
}

TaylorEstimate extract_G_coefficients(const PotentialSolution& sol, int order,
                                      const ExtractionOptions& opt) {
  if (order < 2) throw DomainError("extract_G_coefficients: order must be at least 2");
  auto vs = [&sol](double x) {
    const double H = sol.H_refined(x);
    return std::pair<double, double>{H, phi(x, H, sol.f(), sol.tol())};
  };
  TaylorEstimate h = extract_taylor(vs, order - 2, 0.5 * sol.achieved_half_width(), opt);
  TaylorEstimate g = h;
  g.coeffs.assign(order + 1, 0.0);
  for (int j = 0; j + 2 <= order; ++j) g.coeffs[j + 2] = h.coeffs[j];
  return g;
}

}  // namespace iso
