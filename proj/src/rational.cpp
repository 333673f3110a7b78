#include "iso/rational.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace iso {

Rational decimal_rational(double v) {
  if (!std::isfinite(v)) throw DomainError("decimal_rational: value is not finite");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  const std::string s(buf, res.ptr);
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  const int exp10 = std::stoi(s.substr(e + 1));
  bool neg = false;
  if (!mant.empty() && mant[0] == '-') {
    neg = true;
    mant.erase(0, 1);
  }
  int frac_digits = 0;
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    frac_digits = static_cast<int>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  using boost::multiprecision::cpp_int;
  Rational r{cpp_int(mant)};
  const int shift = exp10 - frac_digits;
  const cpp_int p = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::abs(shift)));
  r = shift >= 0 ? r * Rational(p) : r / Rational(p);
  return neg ? -r : r;
}

namespace {

using RSeries = SeriesPoly<Rational>;

RSeries walk(const ExprAst& ast, int i, const ParamMap& params, int order) {
  const ExprNode& n = ast.node(i);
  switch (n.kind) {
    case NodeKind::Constant:
      return RSeries::constant(decimal_rational(n.value), order);
    case NodeKind::Variable:
      return RSeries::variable(order);
    case NodeKind::Parameter: {
      const auto it = params.find(n.name);
      if (it == params.end()) throw DomainError("unbound parameter '" + n.name + "'");
      return RSeries::constant(decimal_rational(it->second), order);
    }
    case NodeKind::Add:
      return walk(ast, n.lhs, params, order) + walk(ast, n.rhs, params, order);
    case NodeKind::Sub:
      return walk(ast, n.lhs, params, order) - walk(ast, n.rhs, params, order);
    case NodeKind::Mul:
      return walk(ast, n.lhs, params, order) * walk(ast, n.rhs, params, order);
    case NodeKind::Neg:
      return -walk(ast, n.lhs, params, order);
    case NodeKind::Div: {
      const RSeries d = walk(ast, n.rhs, params, order);
      for (int k = 1; k <= d.order(); ++k)
        if (d[k] != 0) throw DomainError("not a polynomial: division by a non-constant");
      if (d[0] == 0) throw DomainError("division by zero");
      return Rational(1) / d[0] * walk(ast, n.lhs, params, order);
    }
    case NodeKind::Pow: {
      const double p = n.value;
      if (p < 0 || p != std::floor(p) || p > 4096) throw DomainError("not a polynomial: exponent " + std::to_string(p));
      const RSeries b = walk(ast, n.lhs, params, order);
      RSeries r = RSeries::constant(Rational(1), order);
      for (int k = 0; k < static_cast<int>(p); ++k) r = r * b;
      return r;
    }
    case NodeKind::Call:
      break;
  }
  throw DomainError("not a polynomial: function call");
}

}  // namespace

SeriesPoly<Rational> polynomial_series(const ExprAst& ast, const ParamMap& params, int order) {
  return walk(ast, ast.root(), params, order);
}

}  // namespace iso
