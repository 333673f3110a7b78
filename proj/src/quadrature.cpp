#include "iso/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>

namespace iso {

namespace {

// Golub-Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
// Jacobi matrix of the Legendre recurrence. Each node is then polished by
// Newton on P_n and the weight taken from 2 / ((1 - x^2) P_n'(x)^2).
GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();

  for (int i = 0; i < n; ++i) {
    double x = ev[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             const GaussLegendreRule& rule, const AdaptiveOptions& opt, int depth) {
  const double m = 0.5 * (a + b);
  const double left = rule.integrate(f, a, m);
  const double right = rule.integrate(f, m, b);
  const double both = left + right;
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(both));
  if (std::abs(both - whole) <= tol) return both;
  if (depth >= opt.max_depth) throw ConvergenceError("adaptive quadrature exceeded maximum depth");
  AdaptiveOptions half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  return adapt(f, a, m, left, rule, half, depth + 1) + adapt(f, m, b, right, rule, half, depth + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  const GaussLegendreRule& rule = gauss_legendre(opt.points);
  return adapt(f, a, b, rule.integrate(f, a, b), rule, opt, 0);
}

}  // namespace iso
