#include "vekua/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "vekua/error.hpp"

namespace vekua {

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

struct FnName {
  std::string_view name;
  Fn fn;
  int arity;
};

constexpr FnName kFunctions[] = {
    {"exp", Fn::Exp, 1},   {"sin", Fn::Sin, 1},   {"cos", Fn::Cos, 1},
    {"sinh", Fn::Sinh, 1}, {"cosh", Fn::Cosh, 1}, {"sqrt", Fn::Sqrt, 1},
    {"log", Fn::Log, 1},   {"atan2", Fn::Atan2, 2},
};

constexpr std::pair<std::string_view, Var> kVariables[] = {
    {"x", Var::X}, {"y", Var::Y}, {"z3", Var::Z3}, {"rho", Var::Rho}, {"t", Var::T},
};

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr make_binary(NodeKind kind, NodePtr a, NodePtr b) {
  Node n;
  n.kind = kind;
  n.args = {std::move(a), std::move(b)};
  return make_node(std::move(n));
}

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>& params)
      : text_(text), params_(params) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
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

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = make_binary(c == '+' ? NodeKind::Add : NodeKind::Sub, lhs, parse_term());
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = make_binary(c == '*' ? NodeKind::Mul : NodeKind::Div, lhs, parse_unary());
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      Node n;
      n.kind = NodeKind::Neg;
      n.args = {parse_unary()};
      return make_node(std::move(n));
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    while (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      const std::size_t digits_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const bool has_digits = pos_ > digits_start;
      const bool trailing = pos_ < text_.size() &&
                            (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
                             std::isalpha(static_cast<unsigned char>(text_[pos_])));
      if (!has_digits || trailing) {
        throw ParseError(at, "exponent of '^' must be an integer literal");
      }
      const std::string digits(text_.substr(digits_start, pos_ - digits_start));
      if (digits.size() > 6) throw ParseError(at, "exponent too large");
      Node n;
      n.kind = NodeKind::Pow;
      n.exponent = std::stoi(digits) * (negative ? -1 : 1);
      n.args = {base};
      base = make_node(std::move(n));
    }
    return base;
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      digits();
      if (pos_ == exp_start) pos_ = save;  // "2e" is 2 followed by an identifier
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    if (lexeme == ".") throw ParseError(start, "malformed number");
    Node n;
    n.kind = NodeKind::Number;
    n.number = std::strtod(lexeme.c_str(), nullptr);
    return make_node(std::move(n));
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) {
        skip_ws();
        if (pos_ >= text_.size()) {
          throw ParseError(open, "unbalanced parentheses: '(' is never closed");
        }
        throw ParseError(pos_, std::string("expected ')' but found '") + text_[pos_] + "'");
      }
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view id = text_.substr(start, pos_ - start);
    if (id == "i") {
      Node n;
      n.kind = NodeKind::Number;
      n.number = cplx(0.0, 1.0);
      return make_node(std::move(n));
    }
    for (const auto& [name, var] : kVariables) {
      if (id == name) {
        Node n;
        n.kind = NodeKind::Variable;
        n.var = var;
        return make_node(std::move(n));
      }
    }
    for (const auto& f : kFunctions) {
      if (id != f.name) continue;
      if (!accept('(')) throw ParseError(pos_, "expected '(' after function " + std::string(id));
      Node n;
      n.kind = NodeKind::Call;
      n.fn = f.fn;
      n.args.push_back(parse_expr());
      for (int k = 1; k < f.arity; ++k) {
        if (!accept(',')) throw ParseError(pos_, std::string(id) + " takes " + std::to_string(f.arity) + " arguments");
        n.args.push_back(parse_expr());
      }
      if (!accept(')')) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unbalanced parentheses: missing ')'");
        throw ParseError(pos_, std::string("expected ')' but found '") + text_[pos_] + "'");
      }
      return make_node(std::move(n));
    }
    if (params_.count(std::string(id)) != 0) {
      Node n;
      n.kind = NodeKind::Parameter;
      n.name = std::string(id);
      return make_node(std::move(n));
    }
    throw ParseError(start, "unknown identifier '" + std::string(id) + "'");
  }

  std::string_view text_;
  const std::set<std::string>& params_;
  std::size_t pos_ = 0;
};

std::string format_number(cplx v) {
  char buf[64];
  if (v.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    return buf;
  }
  if (v.real() == 0.0 && v.imag() == 1.0) return "i";
  char re[32];
  char im[32];
  std::snprintf(re, sizeof re, "%.17g", v.real());
  std::snprintf(im, sizeof im, "%.17g", v.imag());
  return std::string("(") + re + " + " + im + "*i)";
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number: {
      const std::string s = format_number(n.number);
      if (n.number.imag() == 0.0 && n.number.real() < 0.0) {
        out += "(" + s + ")";
      } else {
        out += s;
      }
      return;
    }
    case NodeKind::Variable:
      out += to_string(n.var);
      return;
    case NodeKind::Parameter:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += "(-";
      print(*n.args[0], out);
      out += ")";
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const char* op = n.kind == NodeKind::Add   ? " + "
                       : n.kind == NodeKind::Sub ? " - "
                       : n.kind == NodeKind::Mul ? " * "
                                                 : " / ";
      out += "(";
      print(*n.args[0], out);
      out += op;
      print(*n.args[1], out);
      out += ")";
      return;
    }
    case NodeKind::Pow:
      out += "(";
      print(*n.args[0], out);
      out += "^" + std::to_string(n.exponent) + ")";
      return;
    case NodeKind::Call:
      out += to_string(n.fn) + "(";
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k > 0) out += ", ";
        print(*n.args[k], out);
      }
      out += ")";
      return;
  }
}

std::string node_text(const Node& n) {
  std::string s;
  print(n, s);
  return s;
}

NodePtr bind_node(const NodePtr& n, const Bindings& b) {
  if (n->kind == NodeKind::Parameter) {
    auto it = b.find(n->name);
    if (it == b.end()) throw Error("parameter '" + n->name + "' has no binding");
    Node out;
    out.kind = NodeKind::Number;
    out.number = it->second;
    return make_node(std::move(out));
  }
  if (n->args.empty()) return n;
  Node out = *n;
  for (auto& a : out.args) a = bind_node(a, b);
  return make_node(std::move(out));
}

void collect(const Node& n, std::set<std::string>* params, std::set<Var>* vars) {
  if (n.kind == NodeKind::Parameter && params) params->insert(n.name);
  if (n.kind == NodeKind::Variable && vars) vars->insert(n.var);
  for (const auto& a : n.args) collect(*a, params, vars);
}

template <class T>
T apply_fn(Fn fn, const T& a) {
  if constexpr (std::is_same_v<T, cplx>) {
    switch (fn) {
      case Fn::Exp: return std::exp(a);
      case Fn::Sin: return std::sin(a);
      case Fn::Cos: return std::cos(a);
      case Fn::Sinh: return std::sinh(a);
      case Fn::Cosh: return std::cosh(a);
      case Fn::Sqrt: return std::sqrt(a);
      case Fn::Log: return checked_log(a);
      case Fn::Atan2: break;
    }
  } else {
    switch (fn) {
      case Fn::Exp: return vekua::exp(a);
      case Fn::Sin: return vekua::sin(a);
      case Fn::Cos: return vekua::cos(a);
      case Fn::Sinh: return vekua::sinh(a);
      case Fn::Cosh: return vekua::cosh(a);
      case Fn::Sqrt: return vekua::sqrt(a);
      case Fn::Log: return vekua::log(a);
      case Fn::Atan2: break;
    }
  }
  throw std::logic_error("unary call of a binary function");
}

template <class T>
T eval_node(const Node& n, const VarValues<T>& vars, const Bindings* params) {
  switch (n.kind) {
    case NodeKind::Number:
      return T(n.number);
    case NodeKind::Variable: {
      const auto& slot = vars.slots[static_cast<std::size_t>(n.var)];
      if (!slot) throw Error("variable '" + to_string(n.var) + "' is not bound");
      return *slot;
    }
    case NodeKind::Parameter: {
      if (params) {
        auto it = params->find(n.name);
        if (it != params->end()) return T(it->second);
      }
      throw Error("parameter '" + n.name + "' has no binding");
    }
    case NodeKind::Neg:
      return -eval_node(*n.args[0], vars, params);
    case NodeKind::Add:
      return eval_node(*n.args[0], vars, params) + eval_node(*n.args[1], vars, params);
    case NodeKind::Sub:
      return eval_node(*n.args[0], vars, params) - eval_node(*n.args[1], vars, params);
    case NodeKind::Mul:
      return eval_node(*n.args[0], vars, params) * eval_node(*n.args[1], vars, params);
    default:
      break;
  }
  // Remaining kinds can hit domain errors; report them with their subexpression.
  try {
    switch (n.kind) {
      case NodeKind::Div:
        return checked_div(eval_node(*n.args[0], vars, params), eval_node(*n.args[1], vars, params));
      case NodeKind::Pow:
        return ipow(eval_node(*n.args[0], vars, params), n.exponent);
      case NodeKind::Call:
        if (n.fn == Fn::Atan2) {
          return atan2(eval_node(*n.args[0], vars, params), eval_node(*n.args[1], vars, params));
        }
        return apply_fn(n.fn, eval_node(*n.args[0], vars, params));
      default:
        throw std::logic_error("unhandled node kind");
    }
  } catch (const DomainError& e) {
    throw EvalError(e.what(), node_text(n));
  }
}

}  // namespace

std::string to_string(Var v) {
  for (const auto& [name, var] : kVariables) {
    if (var == v) return std::string(name);
  }
  return "?";
}

std::string to_string(Fn f) {
  for (const auto& fn : kFunctions) {
    if (fn.fn == f) return std::string(fn.name);
  }
  return "?";
}

Expr Expr::number(cplx value) {
  Node n;
  n.kind = NodeKind::Number;
  n.number = value;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(Var v) {
  Node n;
  n.kind = NodeKind::Variable;
  n.var = v;
  return Expr(make_node(std::move(n)));
}

std::string Expr::to_string() const { return root_ ? node_text(*root_) : std::string(); }

Expr Expr::bind(const Bindings& bindings) const { return Expr(bind_node(root_, bindings)); }

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  collect(*root_, &out, nullptr);
  return out;
}

std::set<Var> Expr::variables() const {
  std::set<Var> out;
  collect(*root_, nullptr, &out);
  return out;
}

template <class T>
T Expr::evaluate(const VarValues<T>& vars, const Bindings* params) const {
  return eval_node<T>(*root_, vars, params);
}

template cplx Expr::evaluate<cplx>(const VarValues<cplx>&, const Bindings*) const;
template Jet Expr::evaluate<Jet>(const VarValues<Jet>&, const Bindings*) const;

bool operator==(const Expr::Node& a, const Expr::Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case NodeKind::Number:
      if (a.number != b.number) return false;
      break;
    case NodeKind::Variable:
      if (a.var != b.var) return false;
      break;
    case NodeKind::Parameter:
      if (a.name != b.name) return false;
      break;
    case NodeKind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case NodeKind::Call:
      if (a.fn != b.fn) return false;
      break;
    default:
      break;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!(*a.args[k] == *b.args[k])) return false;
  }
  return true;
}

bool operator==(const Expr& a, const Expr& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return *a.root_ == *b.root_;
}

Expr parse(std::string_view text, const std::set<std::string>& params) {
  for (const auto& p : params) {
    for (const auto& [name, var] : kVariables) {
      if (p == name) throw Error("parameter name '" + p + "' shadows a variable");
    }
    if (p == "i") throw Error("parameter name 'i' is reserved");
  }
  return Expr(Parser(text, params).parse_all());
}

Jet2 eval_jet2(const Expr& e, double x, double y, const Bindings& bindings) {
  VarValues<Jet> vars;
  vars.set(Var::X, Jet::variable(2, 2, 0, x)).set(Var::Y, Jet::variable(2, 2, 1, y));
  return Jet2::from(e.evaluate(vars, &bindings));
}

Jet3 eval_jet3(const Expr& e, double x, double y, double z3, const Bindings& bindings) {
  VarValues<Jet> vars;
  vars.set(Var::X, Jet::variable(3, 2, 0, x))
      .set(Var::Y, Jet::variable(3, 2, 1, y))
      .set(Var::Z3, Jet::variable(3, 2, 2, z3));
  return Jet3::from(e.evaluate(vars, &bindings));
}

}  // namespace vekua
