#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yamabe/geometry/metric_field.hpp"
#include "yamabe/geometry/tensor.hpp"

namespace yamabe {

enum class SolitonKind { Shrinking, Steady, Expanding };

const char* to_string(SolitonKind kind);
/// Shrinking, steady or expanding for rho > 0, = 0, < 0.
SolitonKind kind_of(double rho);

/// Axis-aligned coordinate box used for sampling.
struct ChartBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// A candidate gradient soliton: metric, potential F, and constant rho.
struct SolitonSpec {
  MetricField metric;
  Expr potential;
  double rho = 0.0;
  SolitonKind kind = SolitonKind::Steady;
  ChartBox box;
};

/// Checks the box against the chart and `declared` (when given) against the sign of rho.
/// Throws PreconditionError on a mismatch.
SolitonSpec make_soliton_spec(MetricField metric, Expr potential, double rho, ChartBox box,
                              std::optional<SolitonKind> declared = std::nullopt);

struct SolitonResidual {
  TensorValue matrix;  // nabla nabla F - (R - rho) g
  double norm = 0.0;   // largest absolute component
};

SolitonResidual soliton_residual(const SolitonSpec& s, std::span<const double> p);

}  // namespace yamabe
