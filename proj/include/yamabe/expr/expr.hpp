#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yamabe/expr/jet.hpp"

namespace yamabe {

enum class NodeKind { Number, Symbol, Negate, Add, Sub, Mul, Div, Pow, Call };

struct Node;

/// Immutable, shared expression tree. Copies share nodes.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Expr number(double value);
  static Expr symbol(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr call(Elementary fn, Expr argument);

  bool empty() const noexcept { return node_ == nullptr; }
  const Node& node() const { return *node_; }
  NodeKind kind() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::string name;
  Elementary function = Elementary::Exp;
  Expr lhs;  // operand for Negate and Call
  Expr rhs;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr pow(Expr base, Expr exponent);
Expr pow(Expr base, double exponent);
Expr operator*(double a, Expr b);
Expr operator+(double a, Expr b);

/// Canonical source form; parse(to_string(e)) is structurally identical to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Every symbol name appearing in e, sorted and unique.
std::vector<std::string> symbols_of(const Expr& e);

/// Binding of symbols to jet variables (coordinates) and constants (parameters).
struct Bindings {
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
};

/// Plain evaluation at a point. Throws DomainError (with the offending subtree)
/// or PreconditionError for an unbound symbol.
double eval_scalar(const Expr& e, const Bindings& bindings, std::span<const double> point);

/// Jet of e at `base` with the given order: coefficient alpha equals d^alpha e / alpha!.
Jet eval_jet(const Expr& e, const Bindings& bindings, const BasePoint& base, int order);

}  // namespace yamabe
