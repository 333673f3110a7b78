#include <cmath>
#include <random>

#include "doctest.h"
#include "iso/catalog.hpp"
#include "iso/forge.hpp"
#include "iso/urabe.hpp"

using namespace iso;
using doctest::Approx;

TEST_SUITE("catalog") {

TEST_CASE("harmonic") {
  const CatalogEntry one = harmonic(1.0);
  CHECK(one.g(0.7) == 0.7);
  const CatalogEntry e = harmonic(2.0);
  CHECK(e.g(0.25) == 1.0);
  CHECK(e.G(0.25) == 0.125);
  CHECK((*e.X)(0.25) == 0.5);
  for (double s : {-3.0, 0.0, 2.0}) CHECK((*e.h)(s) == 0.0);
  CHECK((*e.f)(0.4) == 0.0);
  CHECK(e.isochronous);
  CHECK_THROWS_AS(harmonic(0.0), DomainError);
}

TEST_CASE("urabe family") {
  const CatalogEntry e = urabe_family(0.5);
  CHECK((*e.X)(0.3) == Approx(0.280350850198275958).epsilon(1e-14));
  CHECK(e.g(0.3) == Approx(0.245883961385941571).epsilon(1e-14));
  CHECK(e.G(0.3) == Approx(0.0392982996034480835).epsilon(1e-14));
  CHECK((*e.h)((*e.X)(0.3)) == Approx(0.140175425099137979).epsilon(1e-14));
  // g = X / (1 + aX)
  const double X = (*e.X)(0.3);
  CHECK(e.g(0.3) == Approx(X / (1 + 0.5 * X)).epsilon(1e-15));
  for (double s : {0.0, 0.1, 0.2}) CHECK((*e.f)(s) == 0.5);
  CHECK(e.g(0.0) == 0.0);
  CHECK(e.G(0.0) == 0.0);
  CHECK((*e.X)(0.0) == 0.0);
  CHECK(e.domain.hi == Approx(0.9));
  CHECK(e.lambda == 1.0);
  CHECK_THROWS_AS(urabe_family(0.0), DomainError);
  CHECK_THROWS_AS(urabe_family(-1.0), DomainError);
}

TEST_CASE("duffing") {
  const CatalogEntry e = duffing(1.0);
  CHECK(e.g(0.5) == 0.625);
  CHECK(e.G(0.5) == 0.140625);
  CHECK_FALSE(e.isochronous);
  CHECK_FALSE(e.h.has_value());
  CHECK_FALSE(e.f.has_value());
  const CatalogEntry soft = duffing(-1.0);
  CHECK(soft.domain.hi == Approx(0.9));
  const CatalogEntry z = duffing(0.0);
  CHECK(z.isochronous);
  CHECK(z.g(0.3) == 0.3);
}

TEST_CASE("lookup") {
  CHECK(catalog_lookup("urabe:0.25").params.at("a") == 0.25);
  CHECK(catalog_lookup("harmonic").lambda == 1.0);
  CHECK(catalog_lookup("duffing:2").params.at("b") == 2.0);
  CHECK_THROWS_AS(catalog_lookup("pendulum"), DomainError);
  CHECK_THROWS_AS(catalog_lookup("urabe:abc"), DomainError);
}

TEST_CASE("pairwise identities at random points") {
  std::mt19937_64 rng(20261016);
  for (const CatalogEntry& e : catalog_entries()) {
    CAPTURE(e.name);
    std::uniform_real_distribution<double> U(e.domain.lo, e.domain.hi);
    for (int i = 0; i < 200; ++i) {
      const double x = U(rng);
      const double scale = std::max(1.0, std::abs(e.g(x)));
      // G' = g through the jet of the closed-form G
      CHECK(std::abs(e.G.jet(x, 1)[1] - e.g(x)) <= 1e-12 * scale);
      if (!e.isochronous) continue;
      const double X = (*e.X)(x);
      CHECK(std::abs(X * X - 2 * e.G(x)) <= 1e-12 * std::max(1.0, X * X));
      if (!e.h->domain().contains(X)) continue;
      CHECK(std::abs(e.g(x) * (1 + (*e.h)(X)) - e.lambda * X) <= 1e-12 * scale);
      // h and f linked by h'(s) = lambda f(s^2 / 2)
      const double s = X;
      CHECK(std::abs(e.h->jet(s, 1)[1] - e.lambda * (*e.f)(0.5 * s * s)) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
