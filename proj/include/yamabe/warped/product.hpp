#pragma once

#include "yamabe/soliton/soliton_spec.hpp"

namespace yamabe {

/// Product soliton dr^2 + a^2 gbar with F = a r.
struct ProductSoliton {
  SolitonSpec spec;
  double a = 1.0;
  /// Scalar curvature of gbar, rho a^2.
  double fiber_scalar = 0.0;
  /// Gaussian curvature of the assembled fiber a^2 gbar, rho / 2.
  double effective_fiber_curvature = 0.0;
};

/// Shrinking (rho > 0, round sphere fiber) or expanding (rho < 0, hyperbolic plane fiber).
/// Throws PreconditionError for a <= 0, a steady kind, or a sign mismatch with rho.
ProductSoliton build_product_soliton(SolitonKind kind, double a, double rho);

}  // namespace yamabe
