#pragma once

#include <optional>
#include <span>

#include "yamabe/geometry/tensor.hpp"
#include "yamabe/warped/profile.hpp"

namespace yamabe {

/// Curvature of dr^2 + F'^2 gbar over a fiber of constant curvature, as coefficients of gbar:
///   R_1a1b = radial_mixed * gbar_ab
///   R_abcd = fiber_block * (gbar_ac gbar_bd - gbar_ad gbar_bc)
///   R_11   = ricci_radial
///   R_ab   = ricci_fiber * gbar_ab
/// Index 0 is the radial direction. For n = 3 every 2D fiber qualifies; for n >= 4 the
/// fiber is taken to be a space form with the given scalar curvature.
struct WarpedCurvature {
  double radial_mixed = 0.0;
  double fiber_block = 0.0;
  double ricci_radial = 0.0;
  double ricci_fiber = 0.0;
  double scalar = 0.0;
};

WarpedCurvature closed_form_curvature(const WarpedProfilePoint& w);

/// Full component tensors on a chart (r, fiber coordinates) where the fiber metric has
/// components `gbar` ((n-1) x (n-1)) at the point.
struct WarpedTensors {
  TensorValue metric;
  TensorValue riemann;
  TensorValue ricci;
  double scalar = 0.0;
  std::optional<TensorValue> cotton;  // needs F''''
};

WarpedTensors expand(const WarpedProfilePoint& w, const TensorValue& gbar);

/// n = 3 radial Cotton data.
///   c                 (R/4) F'^2 + F' F'''
///   dc_dr             d/dr of c, i.e. the gbar coefficient of d_r(R_ab - R g_ab / 4)
///   cotton_component  X in C_1ab = X gbar_ab, the covariant derivative version
/// The last two need F''''.
struct RadialCotton {
  double c = 0.0;
  std::optional<double> dc_dr;
  std::optional<double> cotton_component;
};

/// Throws DimensionError unless n = 3.
RadialCotton radial_cotton_c(const WarpedProfilePoint& w);

/// Any n: X in C_1ab = X gbar_ab (the remaining components follow by symmetry or vanish).
/// Throws PreconditionError without F''''.
double radial_cotton_coefficient(const WarpedProfilePoint& w);

/// R'' + (n-1) (F''/F') R'.
double radial_laplacian_R(const WarpedProfilePoint& w, double dR, double d2R);

/// Ric(grad F, grad F) = -(n-1) F' F'''.
double ric_radial(const WarpedProfilePoint& w);

}  // namespace yamabe
