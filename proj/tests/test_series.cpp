#include <cmath>

#include "doctest.h"
#include "iso/extraction.hpp"
#include "iso/rational.hpp"
#include "iso/series.hpp"

using namespace iso;
using doctest::Approx;
using SD = SeriesPoly<double>;
using SR = SeriesPoly<Rational>;

TEST_SUITE("series") {

TEST_CASE("arithmetic") {
  const SD a({1.0, 1.0, 0.0}), b({1.0, -1.0, 0.0});
  CHECK(a * b == SD({1.0, 0.0, -1.0}));
  CHECK(integrate(SD::variable(1)) == SD({0.0, 0.0, 0.5}));
  CHECK(differentiate(SD({1.0, 2.0, 3.0})) == SD({2.0, 6.0}));
  const SD q = SD({1.0, 0.0, 0.0, 0.0}) / SD({1.0, -1.0, 0.0, 0.0});
  CHECK(q == SD({1.0, 1.0, 1.0, 1.0}));
  CHECK_THROWS_AS(SD({1.0, 0.0}) / SD({0.0, 1.0}), DomainError);
}

TEST_CASE("composition") {
  // sqrt(1 + u) through order 3
  const SR outer({Rational(1), Rational(1, 2), Rational(-1, 8), Rational(1, 16)});
  const SR inner = Rational(2) * decimal_rational(0.5) * SR::variable(3);
  const SR r = compose(outer, inner);
  CHECK(r == SR({Rational(1), Rational(1, 2), Rational(-1, 8), Rational(1, 16)}));
  CHECK_THROWS_AS(compose(outer, SR({Rational(1), Rational(1)})), DomainError);
}

TEST_CASE("coefficient maps") {
  CHECK(f_coeffs_from_h(SR::odd({Rational(1, 2)}, 1), Rational(1)) == SR({Rational(1, 2)}));
  const SR f = f_coeffs_from_h(SR::odd({Rational(0), Rational(1, 6)}, 3), Rational(1));
  CHECK(f == SR({Rational(0), Rational(1)}));
  CHECK(f_coeffs_from_h(SR(std::vector<Rational>{0}), Rational(1)) == SR({Rational(0)}));
  CHECK_THROWS_AS(f_coeffs_from_h(SR({Rational(0), Rational(1), Rational(1)}), Rational(1)), DomainError);
  CHECK_THROWS_AS(f_coeffs_from_h(SR::odd({Rational(1)}, 1), Rational(2)), DomainError);  // sqrt(2) not rational

  CHECK(h_coeffs_from_f(SR({Rational(1, 2)}), Rational(1)) == SR({Rational(0), Rational(1, 2)}));
  const SR h = h_coeffs_from_f(SR({Rational(0), Rational(1)}), Rational(1));
  CHECK(h[3] == Rational(1, 6));
  CHECK(h_coeffs_from_f(SR({Rational(0)}), Rational(1)) == SR({Rational(0), Rational(0)}));
}

TEST_CASE("G recursion: harmonic") {
  const SR G = g_series_from_f(SR({Rational(0)}), Rational(2), 10);
  for (int n = 0; n <= 10; ++n) CHECK(G[n] == (n == 2 ? Rational(2) : Rational(0)));
}

TEST_CASE("G recursion: f = 1 in exact arithmetic") {
  const SR G = g_series_from_f(SR({Rational(1)}), Rational(1), 8);
  CHECK(G[2] == Rational(1, 2));
  CHECK(G[3] == Rational(-1, 2));
  CHECK(G[4] == Rational(5, 8));
  // binomial expansion of the closed form with a = 1
  const std::vector<double> ref = {0, 0, 0.5, -0.5, 0.625, -0.875, 1.3125, -2.0625, 3.3515625};
  for (int n = 0; n <= 8; ++n) CHECK(static_cast<double>(G[n]) == ref[n]);
}

TEST_CASE("G recursion: f = 0.5 against the closed form") {
  const SD G = g_series_from_f(SD(std::vector<double>{0.5}), 1.0, 8);
  const std::vector<double> ref = {0, 0, 0.5, -0.25, 0.15625, -0.109375, 0.08203125, -0.064453125, 0.0523681640625};
  for (int n = 0; n <= 8; ++n) CHECK(G[n] == Approx(ref[n]).epsilon(1e-15));
}

TEST_CASE("residual closure") {
  const SR f({Rational(1, 3), Rational(-2), Rational(5, 7)});
  const SR G = g_series_from_f(f, Rational(3, 2), 12);
  const SR r = chouikha_series_residual(G, f);
  for (int n = 0; n <= r.order(); ++n) CHECK(r[n] == 0);
}

TEST_CASE("decimal rationals and exact polynomial coefficients") {
  CHECK(decimal_rational(0.1) == Rational(1, 10));
  CHECK(decimal_rational(-2.5e-3) == Rational(-1, 400));
  CHECK(decimal_rational(1e20) == Rational(boost::multiprecision::cpp_int("100000000000000000000")));
  const SR p = polynomial_series(parse_expr("(1 + a*x)^2 / 4 - x^3"), {{"a", 0.2}}, 3);
  CHECK(p == SR({Rational(1, 4), Rational(1, 10), Rational(1, 100), Rational(-1)}));
  CHECK_THROWS_AS(polynomial_series(parse_expr("sin(x)"), {}, 3), DomainError);
  CHECK_THROWS_AS(polynomial_series(parse_expr("1/x"), {}, 3), DomainError);
}

TEST_CASE("extraction of a known analytic function") {
  // exp(x): value and slope are both exp
  auto vs = [](double x) { return std::make_pair(std::exp(x), std::exp(x)); };
  const TaylorEstimate t = extract_taylor(vs, 8, 0.25);
  double fact = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    CHECK(t.coeffs[k] == Approx(1.0 / fact).epsilon(1e-7));
  }
}

TEST_CASE("extracted coefficients of solved potentials match the recursion") {
  for (const char* f : {"x", "0.5"}) {
    CAPTURE(f);
    IsoProblem p;
    p.f = ScalarFn::parse(f, {}, Interval{0.0, std::numeric_limits<double>::infinity()});
    p.lambda = 1.0;
    p.half_width = 0.5;
    const PotentialSolution s = solve_chouikha(p);
    const SD fs = std::string(f) == "x" ? SD({0.0, 1.0}) : SD(std::vector<double>{0.5});
    const SD G = g_series_from_f(fs, 1.0, 8);
    const TaylorEstimate t = extract_G_coefficients(s, 8);
    for (int n = 2; n <= 8; ++n) {
      if (G[n] == 0.0) {
        CHECK(std::abs(t.coeffs[n]) <= 1e-6);
      } else {
        CHECK(std::abs(t.coeffs[n] - G[n]) <= 1e-6 * std::abs(G[n]));
      }
    }
  }
}

}  // TEST_SUITE
