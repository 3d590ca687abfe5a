#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamabe/expr/expr.hpp"

namespace yamabe {

/// Largest discrepancies between closed forms and the generic engine. Each entry is
/// max |closed - generic| / max(1, max |generic|) over the sampled radii.
struct CrossCheckReport {
  std::vector<double> radii;
  double riemann = 0.0;
  double ricci = 0.0;
  double scalar = 0.0;
  double cotton = 0.0;
  double worst() const;
};

/// Samples `resolution` radii evenly in [r_min, r_max] (resolution >= 1).
CrossCheckReport cross_check(int n, double fiber_scalar, const Expr& fp, double r_min, double r_max,
                             int resolution, const std::map<std::string, double>& parameters = {});

}  // namespace yamabe
