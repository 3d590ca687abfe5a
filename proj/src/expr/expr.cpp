#include "yamabe/expr/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

char operator_char(NodeKind kind) {
  switch (kind) {
    case NodeKind::Add: return '+';
    case NodeKind::Sub: return '-';
    case NodeKind::Mul: return '*';
    case NodeKind::Div: return '/';
    case NodeKind::Pow: return '^';
    default: return '?';
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.number); return;
    case NodeKind::Symbol: out += n.name; return;
    case NodeKind::Call:
      out += to_string(n.function);
      out += '(';
      print(n.lhs, out);
      out += ')';
      return;
    case NodeKind::Negate:
      out += '-';
      print_child(n.lhs, precedence(n.lhs.kind()) < 3, out);
      return;
    case NodeKind::Pow:
      print_child(n.lhs, precedence(n.lhs.kind()) < 5, out);
      out += '^';
      print_child(n.rhs, precedence(n.rhs.kind()) < 3, out);
      return;
    default: {
      const int p = precedence(n.kind);
      print_child(n.lhs, precedence(n.lhs.kind()) < p, out);
      out += ' ';
      out += operator_char(n.kind);
      out += ' ';
      print_child(n.rhs, precedence(n.rhs.kind()) <= p, out);
      return;
    }
  }
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.empty()) return;
  const Node& n = e.node();
  if (n.kind == NodeKind::Symbol) out.insert(n.name);
  collect_symbols(n.lhs, out);
  collect_symbols(n.rhs, out);
}

// Tags a DomainError raised at this node with the node's source text.
template <class F>
auto annotate(const Expr& e, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& err) {
    if (!err.subtree().empty()) throw;
    throw DomainError(err.what(), to_string(e));
  }
}

bool integral_exponent(double v) { return std::nearbyint(v) == v && std::abs(v) <= 1e6; }

}  // namespace

Expr Expr::number(double value) {
  if (!std::isfinite(value)) throw PreconditionError("non-finite number literal");
  if (std::signbit(value) && value != 0.0) return negate(number(-value));
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = value == 0.0 ? 0.0 : value;
  return Expr(std::move(n));
}

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Symbol;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Negate;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  if (kind != NodeKind::Add && kind != NodeKind::Sub && kind != NodeKind::Mul &&
      kind != NodeKind::Div && kind != NodeKind::Pow) {
    throw PreconditionError("not a binary node kind");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Elementary fn, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->function = fn;
  n->lhs = std::move(argument);
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }

Expr operator+(Expr a, Expr b) { return Expr::binary(NodeKind::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(NodeKind::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(NodeKind::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(NodeKind::Div, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::negate(std::move(a)); }
Expr pow(Expr base, Expr exponent) {
  return Expr::binary(NodeKind::Pow, std::move(base), std::move(exponent));
}
Expr pow(Expr base, double exponent) { return pow(std::move(base), Expr::number(exponent)); }
Expr operator*(double a, Expr b) { return Expr::number(a) * std::move(b); }
Expr operator+(double a, Expr b) { return Expr::number(a) + std::move(b); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::Number: return x.number == y.number;
    case NodeKind::Symbol: return x.name == y.name;
    case NodeKind::Call: return x.function == y.function && structurally_equal(x.lhs, y.lhs);
    case NodeKind::Negate: return structurally_equal(x.lhs, y.lhs);
    default: return structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
  }
}

std::vector<std::string> symbols_of(const Expr& e) {
  std::set<std::string> names;
  collect_symbols(e, names);
  return {names.begin(), names.end()};
}

double eval_scalar(const Expr& e, const Bindings& bindings, std::span<const double> point) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Number: return n.number;
    case NodeKind::Symbol: {
      const auto& coords = bindings.coordinates;
      auto it = std::find(coords.begin(), coords.end(), n.name);
      if (it != coords.end()) {
        const auto i = static_cast<std::size_t>(it - coords.begin());
        if (i >= point.size()) throw PreconditionError("point has too few coordinates");
        return point[i];
      }
      auto p = bindings.parameters.find(n.name);
      if (p == bindings.parameters.end()) throw PreconditionError("unbound symbol '" + n.name + "'");
      return p->second;
    }
    case NodeKind::Negate: return -eval_scalar(n.lhs, bindings, point);
    case NodeKind::Call: {
      const double x = eval_scalar(n.lhs, bindings, point);
      return annotate(e, [&] { return apply(n.function, x); });
    }
    default: break;
  }
  const double a = eval_scalar(n.lhs, bindings, point);
  const double b = eval_scalar(n.rhs, bindings, point);
  return annotate(e, [&]() -> double {
    switch (n.kind) {
      case NodeKind::Add: return a + b;
      case NodeKind::Sub: return a - b;
      case NodeKind::Mul: return a * b;
      case NodeKind::Div:
        if (b == 0.0) throw DomainError("division by zero");
        return a / b;
      case NodeKind::Pow:
        if (integral_exponent(b)) {
          if (a == 0.0 && b < 0.0) throw DomainError("negative power of zero");
          return std::pow(a, b);
        }
        if (!(a > 0.0)) throw DomainError("non-integer power of non-positive base");
        return std::exp(b * std::log(a));
      default: return 0.0;
    }
  });
}

Jet eval_jet(const Expr& e, const Bindings& bindings, const BasePoint& base, int order) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Number: return Jet::constant(order, base, n.number);
    case NodeKind::Symbol: {
      const auto& coords = bindings.coordinates;
      auto it = std::find(coords.begin(), coords.end(), n.name);
      if (it != coords.end()) {
        const auto i = static_cast<int>(it - coords.begin());
        if (static_cast<std::size_t>(i) >= base->size()) {
          throw PreconditionError("point has too few coordinates");
        }
        return Jet::variable(order, base, i);
      }
      auto p = bindings.parameters.find(n.name);
      if (p == bindings.parameters.end()) throw PreconditionError("unbound symbol '" + n.name + "'");
      return Jet::constant(order, base, p->second);
    }
    case NodeKind::Negate: return -eval_jet(n.lhs, bindings, base, order);
    case NodeKind::Call: {
      Jet x = eval_jet(n.lhs, bindings, base, order);
      return annotate(e, [&] { return apply(n.function, x); });
    }
    default: break;
  }
  Jet a = eval_jet(n.lhs, bindings, base, order);
  Jet b = eval_jet(n.rhs, bindings, base, order);
  return annotate(e, [&]() -> Jet {
    switch (n.kind) {
      case NodeKind::Add: return a + b;
      case NodeKind::Sub: return a - b;
      case NodeKind::Mul: return a * b;
      case NodeKind::Div: return a / b;
      default: return pow(a, b);
    }
  });
}

}  // namespace yamabe
