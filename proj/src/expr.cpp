#include "iso/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace iso {

namespace {

std::optional<Func> lookup_func(std::string_view name) {
  if (name == "sqrt") return Func::Sqrt;
  if (name == "exp") return Func::Exp;
  if (name == "log") return Func::Log;
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  if (name == "tanh") return Func::Tanh;
  return std::nullopt;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sqrt: return "sqrt";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const std::optional<std::set<std::string>>& allowed)
      : text_(text), allowed_(allowed) {}

  ExprAst run() {
    int root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return ExprAst(std::move(nodes_), root);
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError("syntax error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  int push(ExprNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int binary(NodeKind k, int a, int b) {
    ExprNode n;
    n.kind = k;
    n.lhs = a;
    n.rhs = b;
    return push(std::move(n));
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(NodeKind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(NodeKind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(NodeKind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = binary(NodeKind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  int factor() {
    if (accept('-')) {
      ExprNode n;
      n.kind = NodeKind::Neg;
      n.lhs = power();
      return push(std::move(n));
    }
    return power();
  }

  int power() {
    int base = atom();
    if (accept('^')) {
      ExprNode n;
      n.kind = NodeKind::Pow;
      n.lhs = base;
      n.value = exponent();
      return push(std::move(n));
    }
    return base;
  }

  // number ('^' number)*, folded right to left.
  double exponent() {
    skip_ws();
    double e = number();
    if (accept('^')) e = std::pow(e, exponent());
    return e;
  }

  bool at_number() const {
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    return c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  double number() {
    if (!at_number()) {
      if (pos_ >= text_.size()) fail("expected a number but reached end of input");
      fail("expected a number");
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string lit(text_.substr(start, pos_ - start));
    return std::strtod(lit.c_str(), nullptr);
  }

  int atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (at_number()) {
      ExprNode n;
      n.kind = NodeKind::Constant;
      n.value = number();
      return push(std::move(n));
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto f = lookup_func(name);
      skip_ws();
      const bool call = pos_ < text_.size() && text_[pos_] == '(';
      if (f) {
        if (!call) {
          pos_ = start;
          throw ParseError("arity mismatch: function '" + name + "' takes one argument", start);
        }
        ++pos_;
        ExprNode n;
        n.kind = NodeKind::Call;
        n.func = *f;
        n.lhs = expr();
        expect(')');
        return push(std::move(n));
      }
      if (call) throw ParseError("arity mismatch: '" + name + "' is not a function", start);
      ExprNode n;
      if (name == "x") {
        n.kind = NodeKind::Variable;
      } else {
        if (allowed_ && !allowed_->count(name))
          throw ParseError("unknown identifier '" + name + "'", start);
        n.kind = NodeKind::Parameter;
        n.name = name;
      }
      return push(std::move(n));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::optional<std::set<std::string>>& allowed_;
  std::size_t pos_ = 0;
  std::vector<ExprNode> nodes_;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const ExprAst& ast, int i, std::string& out) {
  const ExprNode& n = ast.node(i);
  switch (n.kind) {
    case NodeKind::Constant:
      out += format_number(n.value);
      return;
    case NodeKind::Variable:
      out += 'x';
      return;
    case NodeKind::Parameter:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += "(-";
      print(ast, n.lhs, out);
      out += ')';
      return;
    case NodeKind::Pow:
      out += '(';
      print(ast, n.lhs, out);
      out += '^';
      out += format_number(n.value);
      out += ')';
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      print(ast, n.lhs, out);
      out += ')';
      return;
    default: {
      const char op = n.kind == NodeKind::Add   ? '+'
                      : n.kind == NodeKind::Sub ? '-'
                      : n.kind == NodeKind::Mul ? '*'
                                                : '/';
      out += '(';
      print(ast, n.lhs, out);
      out += op;
      print(ast, n.rhs, out);
      out += ')';
    }
  }
}

bool is_const(const ExprAst& ast, int i) {
  const ExprNode& n = ast.node(i);
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Parameter:
      return true;
    case NodeKind::Variable:
      return false;
    case NodeKind::Neg:
    case NodeKind::Pow:
    case NodeKind::Call:
      return is_const(ast, n.lhs);
    default:
      return is_const(ast, n.lhs) && is_const(ast, n.rhs);
  }
}

bool poly_degree(const ExprAst& ast, int i, int& deg) {
  const ExprNode& n = ast.node(i);
  if (is_const(ast, i)) {
    deg = 0;
    return true;
  }
  int a = 0, b = 0;
  switch (n.kind) {
    case NodeKind::Variable:
      deg = 1;
      return true;
    case NodeKind::Neg:
      return poly_degree(ast, n.lhs, deg);
    case NodeKind::Add:
    case NodeKind::Sub:
      if (!poly_degree(ast, n.lhs, a) || !poly_degree(ast, n.rhs, b)) return false;
      deg = std::max(a, b);
      return true;
    case NodeKind::Mul:
      if (!poly_degree(ast, n.lhs, a) || !poly_degree(ast, n.rhs, b)) return false;
      deg = a + b;
      return true;
    case NodeKind::Div:
      if (!is_const(ast, n.rhs) || !poly_degree(ast, n.lhs, a)) return false;
      deg = a;
      return true;
    case NodeKind::Pow:
      if (n.value < 0 || n.value != std::floor(n.value) || n.value > 64) return false;
      if (!poly_degree(ast, n.lhs, a)) return false;
      deg = a * static_cast<int>(n.value);
      return true;
    default:
      return false;
  }
}

double apply(Func f, double v) {
  switch (f) {
    case Func::Sqrt:
      if (v < 0) throw DomainError("sqrt of a negative value");
      return std::sqrt(v);
    case Func::Exp: return std::exp(v);
    case Func::Log:
      if (!(v > 0)) throw DomainError("log of a non-positive value");
      return std::log(v);
    case Func::Sin: return std::sin(v);
    case Func::Cos: return std::cos(v);
    case Func::Tanh: return std::tanh(v);
  }
  return 0.0;
}

Jetd apply(Func f, const Jetd& v) {
  try {
    switch (f) {
      case Func::Sqrt: return sqrt(v);
      case Func::Exp: return exp(v);
      case Func::Log: return log(v);
      case Func::Sin: return sin(v);
      case Func::Cos: return cos(v);
      case Func::Tanh: return tanh(v);
    }
  } catch (const std::domain_error& e) {
    throw DomainError(e.what());
  }
  return v;
}

double power(double base, double e) {
  if (e == std::floor(e)) return std::pow(base, e);
  if (!(base > 0)) throw DomainError("non-integer power of a non-positive value");
  return std::pow(base, e);
}

Jetd power(const Jetd& base, double e) {
  try {
    return pow(base, e);
  } catch (const std::domain_error& ex) {
    throw DomainError(ex.what());
  }
}

}  // namespace

std::set<std::string> ExprAst::parameters() const {
  std::set<std::string> out;
  for (const auto& n : nodes_)
    if (n.kind == NodeKind::Parameter) out.insert(n.name);
  return out;
}

ExprAst parse_expr(std::string_view text, const std::optional<std::set<std::string>>& allowed_params) {
  return Parser(text, allowed_params).run();
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  if (ast.root() >= 0) print(ast, ast.root(), out);
  return out;
}

bool is_polynomial(const ExprAst& ast, int* degree) {
  int d = 0;
  if (ast.root() < 0 || !poly_degree(ast, ast.root(), d)) return false;
  if (degree) *degree = d;
  return true;
}

BoundExpr::BoundExpr(ExprAst ast, const ParamMap& params) : ast_(std::move(ast)) {
  param_values_.assign(ast_.nodes().size(), 0.0);
  for (std::size_t i = 0; i < ast_.nodes().size(); ++i) {
    const ExprNode& n = ast_.nodes()[i];
    if (n.kind != NodeKind::Parameter) continue;
    auto it = params.find(n.name);
    if (it == params.end()) throw DomainError("unknown identifier '" + n.name + "' (unbound parameter)");
    param_values_[i] = it->second;
    params_[n.name] = it->second;
  }
}

template <typename T>
T BoundExpr::eval_node(int i, const T& x) const {
  const ExprNode& n = ast_.node(i);
  auto lift = [&x](double c) {
    if constexpr (std::is_same_v<T, double>) {
      return c;
    } else {
      return T::constant(c, x.order());
    }
  };
  switch (n.kind) {
    case NodeKind::Constant: return lift(n.value);
    case NodeKind::Variable: return x;
    case NodeKind::Parameter: return lift(param_values_[static_cast<std::size_t>(i)]);
    case NodeKind::Add: return eval_node(n.lhs, x) + eval_node(n.rhs, x);
    case NodeKind::Sub: return eval_node(n.lhs, x) - eval_node(n.rhs, x);
    case NodeKind::Mul: return eval_node(n.lhs, x) * eval_node(n.rhs, x);
    case NodeKind::Div: {
      T den = eval_node(n.rhs, x);
      double d0;
      if constexpr (std::is_same_v<T, double>) {
        d0 = den;
      } else {
        d0 = den[0];
      }
      if (d0 == 0.0) throw DomainError("division by zero");
      return eval_node(n.lhs, x) / den;
    }
    case NodeKind::Pow: return power(eval_node(n.lhs, x), n.value);
    case NodeKind::Neg: return -eval_node(n.lhs, x);
    case NodeKind::Call: return apply(n.func, eval_node(n.lhs, x));
  }
  return x;
}

double BoundExpr::eval(double x) const { return eval_node(ast_.root(), x); }

Jetd BoundExpr::eval_jet(double x0, int order) const {
  return eval_node(ast_.root(), Jetd::variable(x0, order));
}

}  // namespace iso
