#pragma once

// Expression input language for user-supplied scalar functions.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? power
//   power  := atom ('^' number)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//
// The free variable is always `x`. Any other identifier that is not one of
// sqrt, exp, log, sin, cos, tanh is a named parameter that has to be bound
// before evaluation.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iso/error.hpp"
#include "iso/jet.hpp"

namespace iso {

enum class NodeKind { Constant, Variable, Parameter, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Func { Sqrt, Exp, Log, Sin, Cos, Tanh };

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;  // Constant, or the exponent of Pow
  std::string name;    // Parameter
  Func func = Func::Sqrt;
  int lhs = -1;  // child indices into ExprAst::nodes
  int rhs = -1;
};

/// Immutable expression tree stored as an arena; the root is the last node.
class ExprAst {
 public:
  ExprAst() = default;
  ExprAst(std::vector<ExprNode> nodes, int root) : nodes_(std::move(nodes)), root_(root) {}

  const std::vector<ExprNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  const ExprNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

  /// Names of all parameters referenced by the tree.
  std::set<std::string> parameters() const;

 private:
  std::vector<ExprNode> nodes_;
  int root_ = -1;
};

/// Parses `text`. When `allowed_params` is given, any other identifier is an
/// "unknown identifier" error; otherwise unknown identifiers become parameters.
ExprAst parse_expr(std::string_view text,
                   const std::optional<std::set<std::string>>& allowed_params = std::nullopt);

/// Fully parenthesized text that reparses to a tree with identical evaluation.
std::string to_string(const ExprAst& ast);

/// True when the tree is a polynomial in x (constant divisors and integer
/// non-negative powers only); `degree` receives an upper bound on the degree.
bool is_polynomial(const ExprAst& ast, int* degree = nullptr);

using ParamMap = std::map<std::string, double>;

/// Expression with every parameter bound to a number; evaluable over doubles and jets.
class BoundExpr {
 public:
  BoundExpr(ExprAst ast, const ParamMap& params);

  const ExprAst& ast() const { return ast_; }
  const ParamMap& params() const { return params_; }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  Jetd eval_jet(double x0, int order) const;

 private:
  template <typename T>
  T eval_node(int i, const T& x) const;

  ExprAst ast_;
  ParamMap params_;
  std::vector<double> param_values_;  // indexed like ast_.nodes()
};

}  // namespace iso
