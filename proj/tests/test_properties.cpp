// Randomized property checks with fixed seeds.
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "iso/expr.hpp"
#include "iso/forge.hpp"
#include "iso/rational.hpp"
#include "iso/scalar_fn.hpp"
#include "iso/urabe.hpp"

using namespace iso;

namespace {

// Random expression text that is defined and smooth on the whole real line.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 1);
  std::uniform_real_distribution<double> c(0.25, 2.0);
  auto sub = [&] { return random_expr(rng, depth - 1); };
  char num[32];
  std::snprintf(num, sizeof num, "%.6g", c(rng));
  switch (pick(rng)) {
    case 0: return "x";
    case 1: return num;
    case 2: return "(" + sub() + " + " + sub() + ")";
    case 3: return "(" + sub() + " - " + sub() + ")";
    case 4: return "(" + sub() + " * " + sub() + ")";
    case 5: return "(" + sub() + ") / (2 + (" + sub() + ")^2)";
    case 6: return "sin(" + sub() + ")";
    case 7: return "cos(" + sub() + ")";
    case 8: return "tanh(" + sub() + ")";
    default: return "sqrt(1 + (" + sub() + ")^2)";
  }
}

std::string substitute_x(const std::string& outer, const std::string& inner) {
  std::string r;
  for (char ch : outer) r += ch == 'x' ? "(" + inner + ")" : std::string(1, ch);
  return r;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("print then parse evaluates identically") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> X(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const std::string text = random_expr(rng, 4);
    CAPTURE(text);
    const ExprAst a = parse_expr(text);
    const ExprAst b = parse_expr(to_string(a));
    const BoundExpr ea(a, {}), eb(b, {});
    for (int i = 0; i < 100; ++i) {
      const double x = X(rng);
      CHECK(ea(x) == eb(x));
    }
  }
}

TEST_CASE("jet chain rule") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> X(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const std::string u = random_expr(rng, 3), v = random_expr(rng, 3);
    CAPTURE(u);
    CAPTURE(v);
    const ScalarFn fu = ScalarFn::parse(u), fv = ScalarFn::parse(v);
    const ScalarFn uv = ScalarFn::parse(substitute_x(u, v));
    const double x0 = X(rng);
    const int order = 5;
    const Jetd jv = eval_jet(fv, x0, order);
    const Jetd composed = compose(eval_jet(fu, jv[0], order), jv);
    const Jetd direct = eval_jet(uv, x0, order);
    for (int k = 0; k <= order; ++k) {
      double scale = 1.0;
      for (int i = 0; i <= order; ++i) scale = std::max(scale, std::abs(direct[i]));
      CHECK(std::abs(composed[k] - direct[k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("order-0 jet equals plain evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> X(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const ScalarFn f = ScalarFn::parse(random_expr(rng, 4));
    for (int i = 0; i < 20; ++i) {
      const double x = X(rng);
      CHECK(f.jet(x, 0)[0] == f(x));
      CHECK(f.jet(x, 3)[0] == f(x));
    }
  }
}

TEST_CASE("coefficient maps are exact inverses") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> c;
    for (int k = 0; k <= 12; ++k) c.emplace_back(num(rng), den(rng));
    const SeriesPoly<Rational> f(c);
    const Rational lam(den(rng), den(rng));
    const auto h = h_coeffs_from_f(f, lam);
    CHECK(f_coeffs_from_h(h, Rational(lam * lam)) == f);
  }
}

TEST_CASE("G recursion closes exactly for random polynomial f") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> c;
    for (int k = 0; k <= 3; ++k) c.emplace_back(num(rng), den(rng));
    const SeriesPoly<Rational> f(c);
    const auto G = g_series_from_f(f, Rational(den(rng), den(rng)), 12);
    const auto r = chouikha_series_residual(G, f);
    for (int n = 0; n <= r.order(); ++n) CHECK(r[n] == 0);
  }
}

TEST_CASE("f -> h -> f round trip") {
  const Interval half{0.0, std::numeric_limits<double>::infinity()};
  for (const char* text : {"0.5", "x", "cos(x)", "0", "exp(-x)*(1 + x^2)"}) {
    for (double lam : {1.0, 2.0}) {
      CAPTURE(text);
      const ScalarFn f = ScalarFn::parse(text, {}, half);
      const ScalarFn back = f_from_h(h_from_f(f, lam), lam);
      double err = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double s = 2.0 * i / 400;
        err = std::max(err, std::abs(back(s) - f(s)));
      }
      CHECK(err <= 1e-8);
    }
  }
}

TEST_CASE("symmetry of every solved potential") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 8; ++t) {
    IsoProblem p;
    p.f = ScalarFn::parse(random_expr(rng, 2), {}, Interval{0.0, std::numeric_limits<double>::infinity()});
    p.lambda = 0.5 + t * 0.25;
    p.half_width = 0.6;
    const PotentialSolution s = solve_chouikha(p);
    CAPTURE(p.f.describe());
    for (double x : s.grid()) {
      if (x == 0.0) continue;
      CHECK(s.G(x) > 0.0);
      CHECK(x * s.g(x) > 0.0);
    }
    // the raw h inherits the solver's error; the projection is odd to roundoff
    const ScalarFn h = h_from_g(s);
    CHECK(oddness_defect(h) <= 100 * p.tol);
    CHECK(oddness_defect(odd_part(h)) <= 1e-14);
  }
}

}  // TEST_SUITE
