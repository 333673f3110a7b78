#pragma once

// Closed-form reference problems. Isochronous entries carry all five faces
// (g, G, X, h, f); the Duffing control only has g and G.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iso/potential.hpp"
#include "iso/scalar_fn.hpp"

namespace iso {

struct CatalogEntry {
  std::string name;
  double lambda = 1.0;
  ScalarFn g, G;
  std::optional<ScalarFn> X, h, f;
  Interval domain;
  bool isochronous = false;
  // Expression text of each face, for listing and export.
  std::string g_text, G_text, X_text, h_text, f_text;
  ParamMap params;

  /// Potential backed by the closed forms of g and G.
  std::shared_ptr<const FunctionPotential> potential() const;
};

/// g = lambda^2 x; domain |x| <= clamp.
CatalogEntry harmonic(double lambda, double clamp = 10.0);

/// Urabe family I: X = (sqrt(1 + 2ax) - 1)/a, G = X^2/2, g = X/(1 + aX),
/// h(X) = aX, f = a, lambda = 1. Domain is |x| < 1/(2a) shrunk by 10%.
CatalogEntry urabe_family(double a);

/// g = x + beta x^3, not isochronous. beta = 0 gives harmonic(1).
CatalogEntry duffing(double beta);

/// Default entries: harmonic(1), harmonic(2), urabe_family(0.5), duffing(1).
std::vector<CatalogEntry> catalog_entries();

/// Lookup by "harmonic[:lambda]", "urabe[:a]" or "duffing[:beta]".
CatalogEntry catalog_lookup(const std::string& spec);

}  // namespace iso
