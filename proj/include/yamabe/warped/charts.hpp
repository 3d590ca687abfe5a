#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamabe/geometry/metric_field.hpp"

namespace yamabe {

/// Constant-curvature model metric of dimension `dim` >= 2 with scalar curvature `fiber_scalar`,
/// on coordinates u1..u_dim: a scaled round sphere in polar angles, a scaled upper half-space
/// (u_dim > 0), or the flat metric.
MetricField fiber_metric(int dim, double fiber_scalar);

/// A point well inside the fiber chart.
std::vector<double> fiber_base_point(int dim, double fiber_scalar);

/// Explicit chart of dr^2 + F'(r)^2 gbar on coordinates (r, u1, ..., u_{n-1}).
MetricField warped_chart(int n, double fiber_scalar, const Expr& fp,
                         const std::map<std::string, double>& parameters = {});

}  // namespace yamabe
