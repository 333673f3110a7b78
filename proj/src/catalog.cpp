#include "iso/catalog.hpp"

#include <cmath>
#include <sstream>

namespace iso {

namespace {

ScalarFn face(const std::string& text, const ParamMap& params, Interval d) {
  return ScalarFn::parse(text, params, d);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::shared_ptr<const FunctionPotential> CatalogEntry::potential() const {
  return std::make_shared<const FunctionPotential>(g, domain, lambda, G);
}

CatalogEntry harmonic(double lambda, double clamp) {
  if (!(lambda > 0.0)) throw DomainError("harmonic: lambda must be positive");
  if (!(clamp > 0.0)) throw DomainError("harmonic: clamp must be positive");
  CatalogEntry e;
  e.name = "harmonic(" + fmt(lambda) + ")";
  e.lambda = lambda;
  e.params = {{"lam", lambda}};
  e.domain = Interval::symmetric(clamp);
  e.isochronous = true;
  e.g_text = "lam^2*x";
  e.G_text = "lam^2*x^2/2";
  e.X_text = "lam*x";
  e.h_text = "0";
  e.f_text = "0";
  e.g = face(e.g_text, e.params, e.domain);
  e.G = face(e.G_text, e.params, e.domain);
  e.X = face(e.X_text, e.params, e.domain);
  const double Xm = lambda * clamp;
  e.h = face(e.h_text, e.params, Interval::symmetric(Xm));
  e.f = face(e.f_text, e.params, Interval{0.0, 0.5 * Xm * Xm});
  return e;
}

CatalogEntry urabe_family(double a) {
  if (!(a > 0.0)) throw DomainError("urabe_family: a must be positive");
  CatalogEntry e;
  e.name = "urabe(" + fmt(a) + ")";
  e.lambda = 1.0;
  e.params = {{"a", a}};
  e.domain = Interval::symmetric(0.9 / (2.0 * a));
  e.isochronous = true;
  e.g_text = "(sqrt(1+2*a*x)-1)/(a*sqrt(1+2*a*x))";
  e.G_text = "0.5*((sqrt(1+2*a*x)-1)/a)^2";
  e.X_text = "(sqrt(1+2*a*x)-1)/a";
  e.h_text = "a*x";
  e.f_text = "a";
  e.g = face(e.g_text, e.params, e.domain);
  e.G = face(e.G_text, e.params, e.domain);
  e.X = face(e.X_text, e.params, e.domain);
  // X covers [X(lo), X(hi)]; h lives on the symmetric part.
  const double Xm = std::min(-(*e.X)(e.domain.lo), (*e.X)(e.domain.hi));
  e.h = face(e.h_text, e.params, Interval::symmetric(Xm));
  e.f = face(e.f_text, e.params, Interval{0.0, 0.5 * Xm * Xm});
  return e;
}

CatalogEntry duffing(double beta) {
  if (beta == 0.0) {
    CatalogEntry e = harmonic(1.0, 2.0);
    e.name = "duffing(0)";
    return e;
  }
  CatalogEntry e;
  e.name = "duffing(" + fmt(beta) + ")";
  e.lambda = 1.0;
  e.params = {{"b", beta}};
  // For beta < 0 the force vanishes at 1/sqrt(-beta); stay 10% inside.
  e.domain = Interval::symmetric(beta > 0.0 ? 2.0 : 0.9 / std::sqrt(-beta));
  e.isochronous = false;
  e.g_text = "x + b*x^3";
  e.G_text = "x^2/2 + b*x^4/4";
  e.g = face(e.g_text, e.params, e.domain);
  e.G = face(e.G_text, e.params, e.domain);
  return e;
}

std::vector<CatalogEntry> catalog_entries() {
  return {harmonic(1.0), harmonic(2.0), urabe_family(0.5), duffing(1.0)};
}

CatalogEntry catalog_lookup(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::optional<double> arg;
  if (colon != std::string::npos) {
    const std::string num = spec.substr(colon + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw DomainError("catalog: bad parameter in '" + spec + "'");
    arg = v;
  }
  if (name == "harmonic") return harmonic(arg.value_or(1.0));
  if (name == "urabe") return urabe_family(arg.value_or(0.5));
  if (name == "duffing") return duffing(arg.value_or(1.0));
  throw DomainError("catalog: unknown entry '" + name + "' (harmonic, urabe, duffing)");
}

}  // namespace iso
