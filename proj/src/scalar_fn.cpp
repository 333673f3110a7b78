#include "iso/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace iso {

namespace {

class ExprSource final : public ScalarSource {
 public:
  explicit ExprSource(BoundExpr e) : e_(std::move(e)) {}
  double value(double x) const override { return e_.eval(x); }
  Jetd jet(double x, int order) const override { return e_.eval_jet(x, order); }
  int smoothness() const override { return ScalarFn::kUnbounded; }
  std::string describe() const override { return to_string(e_.ast()); }

 private:
  BoundExpr e_;
};

class CoeffSource final : public ScalarSource {
 public:
  CoeffSource(std::vector<double> c, double center) : c_(std::move(c)), x0_(center) {
    if (c_.empty()) c_.push_back(0.0);
  }
  double value(double x) const override {
    const double d = x - x0_;
    double s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * d + *it;
    return s;
  }
  Jetd jet(double x, int order) const override {
    const Jetd d = Jetd::variable(x - x0_, order);
    Jetd s = Jetd::constant(c_.back(), order);
    for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) s = s * d + *it;
    return s;
  }
  int smoothness() const override { return ScalarFn::kUnbounded; }
  std::string describe() const override {
    std::ostringstream os;
    os << "series[" << c_.size() << " terms]";
    return os.str();
  }

 private:
  std::vector<double> c_;
  double x0_;
};

class ClosureSource final : public ScalarSource {
 public:
  ClosureSource(std::function<Jetd(double, int)> fn, int smoothness, std::string what)
      : fn_(std::move(fn)), smooth_(smoothness), what_(std::move(what)) {}
  double value(double x) const override { return fn_(x, 0)[0]; }
  Jetd jet(double x, int order) const override { return fn_(x, order); }
  int smoothness() const override { return smooth_; }
  std::string describe() const override { return what_; }

 private:
  std::function<Jetd(double, int)> fn_;
  int smooth_;
  std::string what_;
};

class SampledSource final : public ScalarSource {
 public:
  SampledSource(double lo, double hi, std::vector<double> y, std::vector<double> dy, double err)
      : lo_(lo), hi_(hi), y_(std::move(y)), dy_(std::move(dy)), err_(err) {
    if (y_.size() < 4) throw DomainError("sampled curve needs at least 4 points");
    if (!dy_.empty() && dy_.size() != y_.size()) throw DomainError("slope data size mismatch");
    if (!(hi_ > lo_)) throw DomainError("sampled curve needs lo < hi");
    step_ = (hi_ - lo_) / static_cast<double>(y_.size() - 1);
  }

  double value(double x) const override { return eval(x, nullptr); }

  Jetd jet(double x, int order) const override {
    if (order > 1) throw DomainError("derivative order exceeds smoothness of sampled curve");
    Jetd j(order);
    double d = 0.0;
    j[0] = eval(x, order >= 1 ? &d : nullptr);
    if (order >= 1) j[1] = d;
    return j;
  }

  int smoothness() const override { return 1; }
  double error_bound() const override { return err_; }
  std::string describe() const override {
    std::ostringstream os;
    os << (dy_.empty() ? "sampled-cubic" : "sampled-hermite") << "[" << y_.size() << " points on ["
       << lo_ << ", " << hi_ << "]]";
    return os.str();
  }

 private:
  double eval(double x, double* slope) const {
    const auto last = static_cast<long>(y_.size()) - 1;
    long i = static_cast<long>(std::floor((x - lo_) / step_));
    i = std::clamp(i, 0L, last - 1);
    const double t = (x - lo_) / step_ - static_cast<double>(i);

    if (!dy_.empty()) {
      const double y0 = y_[i], y1 = y_[i + 1];
      const double m0 = dy_[i] * step_, m1 = dy_[i + 1] * step_;
      const double t2 = t * t, t3 = t2 * t;
      const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
      const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
      if (slope) {
        const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
        const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
        *slope = (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / step_;
      }
      return h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
    }

    // Four-point Lagrange cubic on nodes s = -1, 0, 1, 2 relative to cell start.
    long b = std::clamp(i - 1, 0L, last - 3);
    const double s = (x - lo_) / step_ - static_cast<double>(b);
    double val = 0.0, der = 0.0;
    for (int k = 0; k < 4; ++k) {
      double num = 1.0, den = 1.0, dnum = 0.0;
      for (int m = 0; m < 4; ++m) {
        if (m == k) continue;
        den *= static_cast<double>(k - m);
        // d/ds of prod (s - m): product rule accumulated alongside.
        dnum = dnum * (s - m) + num;
        num *= (s - m);
      }
      val += y_[b + k] * num / den;
      der += y_[b + k] * dnum / den;
    }
    if (slope) *slope = der / step_;
    return val;
  }

  double lo_, hi_, step_ = 0.0;
  std::vector<double> y_, dy_;
  double err_;
};

}  // namespace

ScalarFn ScalarFn::from_expr(BoundExpr e, Interval domain) {
  return ScalarFn(std::make_shared<ExprSource>(std::move(e)), domain);
}

ScalarFn ScalarFn::parse(std::string_view text, const ParamMap& params, Interval domain) {
  return from_expr(BoundExpr(parse_expr(text), params), domain);
}

ScalarFn ScalarFn::constant(double c, Interval domain) { return from_coeffs({c}, 0.0, domain); }

ScalarFn ScalarFn::from_coeffs(std::vector<double> coeffs, double center, Interval domain) {
  return ScalarFn(std::make_shared<CoeffSource>(std::move(coeffs), center), domain);
}

ScalarFn ScalarFn::from_jet_fn(std::function<Jetd(double, int)> jet, Interval domain,
                               int smoothness, std::string description) {
  return ScalarFn(std::make_shared<ClosureSource>(std::move(jet), smoothness, std::move(description)),
                  domain);
}

ScalarFn ScalarFn::sample(const std::function<Jetd(double, int)>& fn, double lo, double hi, int n) {
  if (n < 3) throw DomainError("sampling needs at least 3 cells");
  std::vector<double> y(n + 1), dy(n + 1);
  const double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? hi : lo + i * h;
    const Jetd j = fn(x, 1);
    y[i] = j[0];
    dy[i] = j[1];
  }
  auto src = std::make_shared<SampledSource>(lo, hi, y, dy, 0.0);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xm = lo + (i + 0.5) * h;
    err = std::max(err, std::abs(src->value(xm) - fn(xm, 0)[0]));
  }
  return ScalarFn(std::make_shared<SampledSource>(lo, hi, std::move(y), std::move(dy), err),
                  Interval{lo, hi});
}

ScalarFn ScalarFn::from_samples(double lo, double hi, std::vector<double> values,
                                std::vector<double> slopes, double error_bound) {
  return ScalarFn(
      std::make_shared<SampledSource>(lo, hi, std::move(values), std::move(slopes), error_bound),
      Interval{lo, hi});
}

void ScalarFn::check_domain(double x) const {
  if (!src_) throw DomainError("evaluation of an empty ScalarFn");
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(os.str());
  }
}

Jetd ScalarFn::jet(double x, int order) const {
  check_domain(x);
  if (order < 0) throw DomainError("negative derivative order");
  if (order > src_->smoothness()) throw DomainError("derivative order exceeds declared smoothness");
  return src_->jet(x, order);
}

}  // namespace iso
