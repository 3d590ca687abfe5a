#pragma once

#include <span>
#include <string>
#include <string_view>

#include "yamabe/expr/expr.hpp"

namespace yamabe {

/// Parses an arithmetic expression.
///
/// Grammar, loosest to tightest binding:
///   sum     := product (('+' | '-') product)*        left associative
///   product := unary (('*' | '/') unary)*            left associative
///   unary   := '-' unary | power
///   power   := atom ('^' unary)?                     right associative
///   atom    := number | name | name '(' sum ')' | '(' sum ')'
///
/// Names must appear in `declared`; function names are sin, cos, tan, exp,
/// log, sqrt, sinh, cosh, tanh. No constant folding is done: "2*3" stays a
/// product node. Throws ParseError with the byte offset of the problem.
Expr parse(std::string_view source, std::span<const std::string> declared);

}  // namespace yamabe
