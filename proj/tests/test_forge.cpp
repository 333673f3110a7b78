#include <cmath>

#include "doctest.h"
#include "iso/catalog.hpp"
#include "iso/forge.hpp"
#include "iso/ode.hpp"

using namespace iso;
using doctest::Approx;

namespace {

const Interval kHalfLine{0.0, std::numeric_limits<double>::infinity()};

ScalarFn fn(const char* text) { return ScalarFn::parse(text, {}, kHalfLine); }

PotentialSolution solve(const char* f, double lambda, double hw, double tol = 1e-10) {
  IsoProblem p;
  p.f = fn(f);
  p.lambda = lambda;
  p.half_width = hw;
  p.tol = tol;
  return solve_chouikha(p);
}

}  // namespace

TEST_SUITE("forge") {

TEST_CASE("big_F") {
  CHECK(big_F(fn("0.5"), 0.2) == Approx(0.1).epsilon(1e-15));
  CHECK(big_F(fn("x"), 1.0) == Approx(0.5).epsilon(1e-15));
  CHECK(big_F(fn("cos(x)"), 0.3) == Approx(0.295520206661339575).epsilon(1e-14));
  CHECK(big_F(fn("cos(x)"), 0.0) == 0.0);
  CHECK_THROWS_AS(big_F(ScalarFn::parse("x", {}, Interval{0.0, 1.0}), 2.0), DomainError);
}

TEST_CASE("hadamard_K") {
  for (double x : {0.0, 0.1, 0.7, 3.0}) CHECK(hadamard_K(fn("0.5"), x) == Approx(0.5).epsilon(1e-15));
  CHECK(hadamard_K(fn("x"), 0.4) == Approx(0.2).epsilon(1e-15));
  CHECK(hadamard_K(fn("cos(x)+2"), 0.0) == 3.0);
  // K(x) = sin(x)/x for f = cos
  CHECK(hadamard_K(fn("cos(x)"), 0.9) == Approx(std::sin(0.9) / 0.9).epsilon(1e-13));
}

TEST_CASE("hadamard_K jet matches the closed form for f = exp") {
  // K(x) = (e^x - 1)/x = sum x^k / (k+1)!
  const Jetd k0 = hadamard_K_jet(fn("exp(x)"), 0.0, 4);
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    fact *= (k + 1);
    CHECK(k0[k] == Approx(1.0 / fact).epsilon(1e-13));
  }
}

TEST_CASE("phi") {
  for (double x : {-1.0, 0.0, 0.3})
    for (double H : {0.0, 0.5, 2.0}) CHECK(phi(x, H, fn("0")) == 0.0);
  CHECK(phi(0.0, 0.5, fn("0.5")) == Approx(-0.25).epsilon(1e-15));
  CHECK(phi(0.7, 0.0, fn("0.5")) == 0.0);
  // 1 + x H K = 1 - 2 * 1 * 0.5 = 0
  CHECK_THROWS_AS(phi(-2.0, 1.0, fn("0.5")), SingularityError);
}

TEST_CASE("harmonic solution is exact") {
  const PotentialSolution s = solve("0", 2.0, 1.0);
  CHECK(s.achieved_half_width() == 1.0);
  for (double x : {-1.0, -0.37, 0.0, 0.2, 1.0}) {
    CHECK(s.H(x) == 2.0);
    CHECK(s.G(x) == Approx(2 * x * x).epsilon(1e-15));
    CHECK(s.g(x) == Approx(4 * x).epsilon(1e-15));
    CHECK(chouikha_residual(s, fn("0"), x) == Approx(0.0).scale(1.0).epsilon(1e-15));
  }
}

TEST_CASE("urabe family reproduced pointwise") {
  const PotentialSolution s = solve("0.5", 1.0, 0.8);
  const CatalogEntry u = urabe_family(0.5);
  CHECK(s.achieved_half_width() == 0.8);
  for (int i = -80; i <= 80; ++i) {
    const double x = i * 0.01;
    CHECK(std::abs(s.G(x) - u.G(x)) <= 1e-8 * std::max(u.G(x), 1e-300) + 1e-300);
    CHECK(std::abs(s.g(x) - u.g(x)) <= 1e-8);
  }
}

TEST_CASE("solution invariants") {
  for (const char* f : {"0", "0.5", "x", "cos(x)"}) {
    for (double lam : {1.0, 2.0}) {
      CAPTURE(f);
      CAPTURE(lam);
      const PotentialSolution s = solve(f, lam, 1.0);
      CHECK(s.H(0.0) == lam * lam / 2);
      CHECK(s.G(0.0) == 0.0);
      CHECK(s.g(0.0) == 0.0);
      CHECK(std::abs(s.dg(0.0) - lam * lam) <= 10 * s.tol());
      for (double x : s.grid()) {
        if (x == 0.0) continue;
        CHECK(s.G(x) > 0.0);
        CHECK(x * s.g(x) > 0.0);
      }
    }
  }
}

TEST_CASE("early stop at the phi denominator floor") {
  // f = 1, lambda = 2: h(X) = 2X, so 1 + h vanishes at X = -1/2.
  const PotentialSolution s = solve("1", 2.0, 1.0);
  CHECK(s.stop_left() == StopReason::Singularity);
  CHECK(s.stop_right() == StopReason::Reached);
  CHECK(s.x_min() > -0.25);
  CHECK(s.x_max() == 1.0);
  const double x = s.x_min();
  const double d = 1.0 + x * s.H(x) * hadamard_K(s.f(), x * x * s.H(x));
  CHECK(d == Approx(kPhiDenominatorFloor).epsilon(1e-3));
}

TEST_CASE("f domain exhaustion stops a side") {
  IsoProblem p;
  p.f = ScalarFn::parse("0.5", {}, Interval{0.0, 0.05});
  p.lambda = 1.0;
  p.half_width = 0.8;
  const PotentialSolution s = solve_chouikha(p);
  CHECK(s.stop_right() == StopReason::DomainExhausted);
  CHECK(s.G(s.x_max()) <= 0.05);
  CHECK(s.G(s.x_max()) > 0.04);
}

TEST_CASE("invalid problems") {
  IsoProblem p;
  p.f = fn("0");
  p.lambda = -1.0;
  CHECK_THROWS_AS(solve_chouikha(p), DomainError);
  p.lambda = 1.0;
  p.half_width = 0.0;
  CHECK_THROWS_AS(solve_chouikha(p), DomainError);
  p.half_width = 1.0;
  p.tol = 0.0;
  CHECK_THROWS_AS(solve_chouikha(p), DomainError);
}

TEST_CASE("chouikha residual examples") {
  const CatalogEntry u = urabe_family(0.5);
  CHECK(std::abs(chouikha_residual(*u.potential(), *u.f, 0.3)) <= 1e-8);
  const CatalogEntry d = duffing(1.0);
  CHECK(chouikha_residual(*d.potential(), fn("0"), 0.5) == Approx(-0.03125).epsilon(1e-12));
}

TEST_CASE("residual bound on catalog problems") {
  for (const CatalogEntry& e : catalog_entries()) {
    if (!e.isochronous) continue;
    CAPTURE(e.name);
    IsoProblem p;
    p.f = e.f->with_domain(kHalfLine);
    p.lambda = e.lambda;
    p.half_width = std::min(e.domain.hi, 0.8);
    const PotentialSolution s = solve_chouikha(p);
    double r = 0.0;
    for (double x : s.grid()) r = std::max(r, std::abs(chouikha_residual(s, s.f(), x)));
    CHECK(r <= 100 * p.tol);
    // and the closed form G on 90% of the domain
    double err = 0.0;
    for (int i = -90; i <= 90; ++i) {
      const double x = p.half_width * i / 100.0;
      err = std::max(err, std::abs(s.G(x) - e.G(x)));
    }
    CHECK(err <= 1e-8);
  }
}

TEST_CASE("uniqueness: different f give separable solutions") {
  const PotentialSolution a = solve("0.5", 1.0, 0.6);
  const PotentialSolution b = solve("0.5 + x", 1.0, 0.6);
  double sup = 0.0, ra = 0.0, rb = 0.0;
  for (int i = -50; i <= 50; ++i) {
    const double x = i * 0.01;
    sup = std::max(sup, std::abs(a.g(x) - b.g(x)));
    ra = std::max(ra, std::abs(chouikha_residual(a, b.f(), x)));
    rb = std::max(rb, std::abs(chouikha_residual(b, a.f(), x)));
  }
  CHECK(sup > 1e-4);
  CHECK(ra > 1e-5);
  CHECK(rb > 1e-5);
}

TEST_CASE("H jet agrees with dense output derivative") {
  const PotentialSolution s = solve("cos(x)", 1.0, 0.8);
  for (double x : {-0.4, 0.0, 0.25, 0.7}) {
    const Jetd j = s.H_jet(x, 3);
    CHECK(j[0] == s.H(x));
    CHECK(j[1] == Approx(s.dH(x)).epsilon(1e-14));
  }
  const Jetd G = s.G_jet(0.0, 4);
  CHECK(G[0] == 0.0);
  CHECK(G[1] == 0.0);
  CHECK(G[2] == 0.5);
}

TEST_CASE("H_refined agrees with the dense output and finishes every short restart") {
  const PotentialSolution s = solve("0.5", 2.0, 1.0);
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.999 * (s.x_min() + (s.x_max() - s.x_min()) * i / 400.0);
    CHECK(std::abs(s.H_refined(x) - s.H(x)) <= 1e-7 * s.H(x));
  }
}

TEST_CASE("dopri5 lands exactly on the end point") {
  // one step that covers the whole span used to stop a few ulps short
  OdeOptions opt;
  opt.h_init = 0.0155243 - 0.00674329;
  const auto r = integrate_dopri5([](double, double y) { return -y; }, 0.00674329, 1.0, 0.0155243, opt);
  CHECK(r.status == OdeStatus::Completed);
  CHECK(r.t == 0.0155243);
  CHECK(r.y == Approx(std::exp(-(0.0155243 - 0.00674329))).epsilon(1e-12));
}

}  // TEST_SUITE
