#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "iso/catalog.hpp"
#include "iso/forge.hpp"
#include "iso/urabe.hpp"

using namespace iso;
using doctest::Approx;

namespace {

const Interval kHalfLine{0.0, std::numeric_limits<double>::infinity()};

PotentialSolution solve(const char* f, double lambda, double hw) {
  IsoProblem p;
  p.f = ScalarFn::parse(f, {}, kHalfLine);
  p.lambda = lambda;
  p.half_width = hw;
  return solve_chouikha(p);
}

}  // namespace

TEST_SUITE("urabe") {

TEST_CASE("x_capital") {
  const auto h2 = harmonic(2.0).potential();
  CHECK(x_capital(*h2, 0.25) == Approx(0.5).epsilon(1e-15));
  CHECK(x_capital(*h2, -0.25) == Approx(-0.5).epsilon(1e-15));
  CHECK(x_capital(*h2, 0.0) == 0.0);
  const auto u = urabe_family(0.5).potential();
  CHECK(x_capital(*u, 0.3) == Approx(0.280350850198275958).epsilon(1e-14));
  const FunctionPotential bad(ScalarFn::parse("x - 3*x^2"), Interval::symmetric(1.0));
  CHECK_THROWS_AS(x_capital(bad, 0.9), DomainError);
}

TEST_CASE("x_of_big_X") {
  const auto h2 = harmonic(2.0).potential();
  CHECK(x_of_big_X(*h2, 0.5) == Approx(0.25).epsilon(1e-15));
  CHECK(x_of_big_X(*h2, 0.0) == 0.0);
  const auto u = urabe_family(0.5).potential();
  const double X = 0.280350850198275958;
  // closed-form inverse x = X + a X^2 / 2
  CHECK(std::abs(x_of_big_X(*u, X) - (X + 0.25 * X * X)) <= 1e-9);
  CHECK(std::abs(x_of_big_X(*u, -X) - (-X + 0.25 * X * X)) <= 1e-9);
  CHECK_THROWS_AS(x_of_big_X(*h2, 100.0), DomainError);
}

TEST_CASE("x_of_big_X inverts x_capital") {
  const PotentialSolution s = solve("cos(x)", 1.0, 0.8);
  for (double x : {-0.45, -0.1, 1e-7, 0.33, 0.79}) CHECK(x_of_big_X(s, x_capital(s, x)) == Approx(x).epsilon(1e-13));
}

TEST_CASE("h_from_f") {
  const ScalarFn h = h_from_f(ScalarFn::parse("0.5", {}, kHalfLine), 1.0);
  for (double s : {-1.2, -0.3, 0.0, 0.4, 2.0}) CHECK(h(s) == Approx(0.5 * s).epsilon(1e-14));
  const ScalarFn z = h_from_f(ScalarFn::parse("0", {}, kHalfLine), 1.0);
  CHECK(z(0.7) == 0.0);
  const ScalarFn c = h_from_f(ScalarFn::parse("x", {}, kHalfLine), 1.0);
  for (double s : {-1.1, 0.2, 0.9}) CHECK(c(s) == Approx(s * s * s / 6).epsilon(1e-14));
  CHECK(c.jet(0.9, 1)[1] == Approx(0.81 / 2).epsilon(1e-15));
  // f on [0, 0.5] gives h on |s| <= 1
  const ScalarFn b = h_from_f(ScalarFn::parse("x", {}, Interval{0.0, 0.5}), 1.0);
  CHECK(b.domain().hi == Approx(1.0));
  CHECK_THROWS_AS(b(1.5), DomainError);
}

TEST_CASE("f_from_h") {
  const ScalarFn f = f_from_h(ScalarFn::parse("0.5*x", {}, Interval::symmetric(1.0)), 1.0);
  for (double s : {0.0, 0.1, 0.5}) CHECK(f(s) == Approx(0.5).epsilon(1e-15));
  CHECK(f.domain().hi == Approx(0.5));
  const ScalarFn z = f_from_h(ScalarFn::parse("0", {}, Interval::symmetric(1.0)), 1.0);
  CHECK(z(0.3) == 0.0);
  const ScalarFn c = f_from_h(ScalarFn::parse("x^3/6", {}, Interval::symmetric(2.0)), 1.0);
  for (double s : {0.0, 0.3, 1.7}) CHECK(c(s) == Approx(s).scale(1.0).epsilon(1e-14));
  CHECK(c.jet(0.0, 2)[1] == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(c(-0.1), DomainError);
}

TEST_CASE("h_from_g on closed forms") {
  const ScalarFn h0 = h_from_g(*harmonic(2.0).potential());
  for (double s : {-3.0, -0.5, 0.0, 1.0}) CHECK(std::abs(h0(s)) <= 1e-15);
  const ScalarFn h = h_from_g(*urabe_family(0.5).potential());
  double err = 0.0;
  for (int i = -280; i <= 280; ++i) err = std::max(err, std::abs(h(i * 1e-3) - 0.5 * i * 1e-3));
  CHECK(err <= 1e-8);
  CHECK(h(0.0) == 0.0);
}

TEST_CASE("h_from_g after solve matches h_from_f") {
  const PotentialSolution s = solve("x", 1.0, 1.0);
  const ScalarFn h = h_from_g(s);
  const ScalarFn ref = h_from_f(s.f(), 1.0);
  double err = 0.0;
  for (int i = -100; i <= 100; ++i) {
    const double X = std::clamp(h.domain().hi * i / 100.0, h.domain().lo, h.domain().hi);
    err = std::max(err, std::abs(h(X) - ref(X)));
  }
  CHECK(err <= 1e-7);
}

TEST_CASE("h_from_g rejects a force that vanishes off the origin") {
  const FunctionPotential p(ScalarFn::parse("x - x^3"), Interval::symmetric(1.0));
  CHECK_THROWS_AS(h_from_g(p), DomainError);
}

TEST_CASE("urabe residual") {
  const auto h2 = harmonic(2.0).potential();
  const ScalarFn zero = ScalarFn::constant(0.0);
  for (double x : {-1.0, 0.25, 3.0}) CHECK(urabe_residual(*h2, zero, x) == 0.0);
  const CatalogEntry u = urabe_family(0.5);
  CHECK(std::abs(urabe_residual(*u.potential(), *u.h, 0.3)) <= 1e-9);
  CHECK(urabe_residual(*h2, ScalarFn::parse("0.1*x"), 0.25) == Approx(0.05).epsilon(1e-14));
}

TEST_CASE("limit of X/g at the origin") {
  const LimitCheck h = check_limit_2_2(*harmonic(2.0, 1.0).potential());
  for (double d : h.deviation) CHECK(d <= 1e-15);
  const auto up = urabe_family(0.5).potential();
  const LimitCheck u = check_limit_2_2(*up);
  for (std::size_t k = 0; k < u.x.size(); ++k) {
    // X/g = (1 + X/2)/lambda, and the check takes the worse side
    const double X = std::max(std::abs(x_capital(*up, u.x[k])), std::abs(x_capital(*up, -u.x[k])));
    CHECK(u.deviation[k] <= 0.5 * X + 1e-9);
    if (k > 0) CHECK(u.deviation[k] <= u.deviation[k - 1] + 1e-9);
  }
  const PotentialSolution s = solve("cos(x)", 2.0, 0.5);
  const LimitCheck c = check_limit_2_2(s);
  for (std::size_t k = 2; k < c.x.size(); ++k) CHECK(c.deviation[k] <= c.deviation[k - 1] + 1e-9);
  CHECK(c.deviation.back() <= 1e-4);
}

TEST_CASE("oddness of produced h") {
  CHECK(oddness_defect(h_from_f(ScalarFn::parse("cos(x)", {}, Interval{0.0, 2.0}), 2.0)) <= 1e-10);
  const PotentialSolution s = solve("0.5 + x", 1.0, 0.6);
  CHECK(oddness_defect(h_from_g(s)) <= 1e-10);
  const ScalarFn odd = odd_part(ScalarFn::parse("x + x^2"));
  CHECK(odd(0.5) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("X is increasing with slope lambda at the origin") {
  for (double lam : {1.0, 2.0}) {
    const PotentialSolution s = solve("cos(x)", lam, 0.5);
    CHECK(std::sqrt(2.0 * s.G_jet(0.0, 2)[2]) == Approx(lam).epsilon(1e-8));
    for (double x : s.grid())
      if (x != 0.0) CHECK(s.g(x) / x_capital(s, x) > 0.0);
  }
}

TEST_CASE("g -> h -> f -> solve -> g on the urabe family") {
  const CatalogEntry u = urabe_family(0.5);
  const auto pot = u.potential();
  const ScalarFn h = odd_part(h_from_g(*pot));
  IsoProblem p;
  p.f = f_from_h(h, 1.0);
  p.lambda = 1.0;
  p.half_width = 0.4;
  const PotentialSolution s = solve_chouikha(p);
  double err = 0.0;
  for (int i = -40; i <= 40; ++i) err = std::max(err, std::abs(s.g(i * 0.01) - u.g(i * 0.01)));
  CHECK(err <= 1e-6);
}

}  // TEST_SUITE
