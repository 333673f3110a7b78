#pragma once

// Exact rational scalar for the series engine.

#include <boost/multiprecision/cpp_int.hpp>

#include "iso/expr.hpp"
#include "iso/series.hpp"

namespace iso {

using Rational = boost::multiprecision::cpp_rational;

template <>
struct ScalarTraits<Rational> {
  /// Exact square root; DomainError unless numerator and denominator are perfect squares.
  static Rational sqrt(const Rational& v) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(v);
    const cpp_int den = boost::multiprecision::denominator(v);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) throw DomainError("square root is not rational");
    return Rational(rn, rd);
  }
  static bool is_zero(const Rational& v) { return v == 0; }
};

/// The rational with the shortest decimal expansion that rounds to v
/// ("0.1" gives 1/10, not the binary fraction).
Rational decimal_rational(double v);

/// Exact coefficients of a polynomial expression in x through `order`, with
/// every literal and parameter read as its shortest decimal. DomainError if
/// the expression is not a polynomial.
SeriesPoly<Rational> polynomial_series(const ExprAst& ast, const ParamMap& params, int order);

}  // namespace iso
