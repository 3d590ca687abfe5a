#pragma once

#include <optional>
#include <span>
#include <utility>

#include "yamabe/geometry/local_geometry.hpp"

namespace yamabe {

/// All curvature-derived tensors of a metric at one point.
struct CurvaturePack {
  TensorValue metric;
  TensorValue inverse_metric;
  TensorValue christoffel;  // Gamma^k_ij, slots (up, down, down)
  TensorValue riemann;
  TensorValue ricci;
  double scalar = 0.0;
  TensorValue schouten;
  TensorValue weyl;
  TensorValue cotton;
  std::optional<TensorValue> bach;
  MetricDiagnostics diagnostics;
};

/// Evaluates every tensor at p. `order` is the metric jet order (>= 3, >= 4 with Bach).
CurvaturePack curvature_pack(const MetricField& m, std::span<const double> p, int order = 4,
                             bool with_bach = true);

/// Converts a jet-level geometry into point values.
CurvaturePack curvature_pack(const LocalGeometry& geo, bool with_bach = true);

TensorValue christoffel(const MetricField& m, std::span<const double> p);
TensorValue riemann(const MetricField& m, std::span<const double> p);
std::pair<TensorValue, double> ricci_scalar(const MetricField& m, std::span<const double> p);
TensorValue schouten(const MetricField& m, std::span<const double> p);
TensorValue weyl(const MetricField& m, std::span<const double> p);
TensorValue cotton(const MetricField& m, std::span<const double> p);
TensorValue bach(const MetricField& m, std::span<const double> p);
TensorValue hessian(const MetricField& m, const Expr& f, std::span<const double> p);
double laplacian(const MetricField& m, const Expr& f, std::span<const double> p);
/// g^ij d_i f d_j h.
double grad_inner(const MetricField& m, const Expr& f, const Expr& h, std::span<const double> p);

}  // namespace yamabe
