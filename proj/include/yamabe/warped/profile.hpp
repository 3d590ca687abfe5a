#pragma once

#include <map>
#include <optional>
#include <string>

#include "yamabe/expr/expr.hpp"

namespace yamabe {

/// Radial data of g = dr^2 + F'(r)^2 gbar at one radius: d1 = F', d2 = F'', d3 = F''', d4 = F''''.
struct WarpedProfilePoint {
  int n = 3;
  double fiber_scalar = 2.0;
  double r = 0.0;
  double d1 = 1.0;
  double d2 = 0.0;
  double d3 = 0.0;
  std::optional<double> d4;
};

/// Throws DimensionError for n < 3 and DomainError unless F' > 0 and all data are finite.
void validate(const WarpedProfilePoint& w);

/// Profile point from an expression for F' in the radial variable `radial` (derivatives from jets).
WarpedProfilePoint profile_from_expression(int n, double fiber_scalar, const Expr& fp, double r,
                                           const std::string& radial = "r",
                                           const std::map<std::string, double>& parameters = {});

}  // namespace yamabe
