#pragma once

// A small expression language for coefficient functions:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] INTEGER)?
//   primary := NUMBER | 'i' | IDENT | FUNC '(' expr (',' expr)* ')' | '(' expr ')'
//
// Variables are x, y, z3 (coordinates), rho (argument of univariate
// Condition-S expressions) and t (boundary parameter). Any other identifier
// must be a declared parameter.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vekua/jet.hpp"

namespace vekua {

enum class Var { X = 0, Y = 1, Z3 = 2, Rho = 3, T = 4 };
inline constexpr int kVarCount = 5;

enum class Fn { Exp, Sin, Cos, Sinh, Cosh, Sqrt, Log, Atan2 };

enum class NodeKind { Number, Variable, Parameter, Neg, Add, Sub, Mul, Div, Pow, Call };

using Bindings = std::map<std::string, cplx>;

/// Values assigned to the variables of an expression during evaluation.
template <class T>
struct VarValues {
  std::array<std::optional<T>, kVarCount> slots;

  VarValues& set(Var v, T value) {
    slots[static_cast<std::size_t>(v)] = std::move(value);
    return *this;
  }
};

class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    NodeKind kind = NodeKind::Number;
    cplx number{};
    Var var = Var::X;
    std::string name;  // parameter name
    int exponent = 0;  // Pow
    Fn fn = Fn::Exp;   // Call
    std::vector<NodePtr> args;
  };

  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  static Expr number(cplx value);
  static Expr variable(Var v);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  /// Fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  /// Replace every parameter by its bound value. Throws Error on a missing one.
  Expr bind(const Bindings& bindings) const;

  std::set<std::string> parameters() const;
  std::set<Var> variables() const;

  /// Evaluate with the given variable values; parameters must be bound either
  /// here or by a previous bind(). T is cplx or Jet.
  template <class T>
  T evaluate(const VarValues<T>& vars, const Bindings* params = nullptr) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

bool operator==(const Expr::Node& a, const Expr::Node& b);

/// Parse `text`; identifiers other than variables and functions must be listed
/// in `params`. Throws ParseError carrying the byte offset of the first error.
Expr parse(std::string_view text, const std::set<std::string>& params = {});

/// Value and exact first/second partials at (x, y).
Jet2 eval_jet2(const Expr& e, double x, double y, const Bindings& bindings = {});

/// Value, gradient and Hessian at (x, y, z3).
Jet3 eval_jet3(const Expr& e, double x, double y, double z3, const Bindings& bindings = {});

std::string to_string(Var v);
std::string to_string(Fn f);

extern template cplx Expr::evaluate<cplx>(const VarValues<cplx>&, const Bindings*) const;
extern template Jet Expr::evaluate<Jet>(const VarValues<Jet>&, const Bindings*) const;

}  // namespace vekua
