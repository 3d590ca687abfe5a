#pragma once

#include <array>

namespace yamabe {

/// Fixed data of the radial reduction: dimension, fiber scalar curvature and soliton constant.
struct ProfileParams {
  int n = 3;
  double fiber_scalar = 2.0;
  double rho = 0.0;
};

/// phi = F', dphi = F'', ddphi = F''' at radius r. F itself is carried along for output.
struct ODEState {
  double r = 0.0;
  double F = 0.0;
  double phi = 1.0;
  double dphi = 0.0;
  double ddphi = 0.0;
};

/// Throws DimensionError for n < 3 and PreconditionError for non-finite data.
void validate(const ProfileParams& p);

/// F''' such that the warped scalar curvature equals rho + F'':
///   phi'' = phi [Rbar phi^-2 - (n-1)(n-2)(phi'/phi)^2 - rho - phi'] / (2(n-1)).
/// Throws DomainError unless phi > 0.
double profile_rhs(const ProfileParams& p, double phi, double dphi);

/// d/dr (F, phi, phi') for the explicit first-order system.
std::array<double, 3> profile_system(const ProfileParams& p, const std::array<double, 3>& y);

/// State at r with ddphi filled in from the right-hand side.
ODEState make_state(const ProfileParams& p, double r, double F, double phi, double dphi);

/// Scalar curvature from the state, (F')^-2 Rbar - (n-1)(n-2)(F''/F')^2 - 2(n-1) F'''/F'.
double scalar_from_state(const ProfileParams& p, const ODEState& s);

/// Truncated series of the solution closing smoothly at r = 0 (phi(0) = 0, phi'(0) = 1,
/// phi''(0) = 0), evaluated at r = eps:
///   phi = eps + b eps^3, b = -(rho + 1) / (6 n (n-1)).
/// Needs the unit round sphere fiber, Rbar = (n-1)(n-2); throws PreconditionError otherwise
/// or when eps <= 0.
ODEState origin_series_start(const ProfileParams& p, double eps = 1e-4);

}  // namespace yamabe
