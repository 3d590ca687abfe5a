#include "yamabe/ode/profile_ode.hpp"

#include <cmath>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

void validate(const ProfileParams& p) {
  if (p.n < 3) throw DimensionError("the profile system needs n >= 3");
  if (!std::isfinite(p.fiber_scalar) || !std::isfinite(p.rho)) {
    throw PreconditionError("profile parameters must be finite");
  }
}

double profile_rhs(const ProfileParams& p, double phi, double dphi) {
  if (!(phi > 0.0)) throw DomainError("phi must stay positive, got " + std::to_string(phi));
  const double m = p.n - 1.0;
  const double q = dphi / phi;
  return phi * (p.fiber_scalar / (phi * phi) - m * (m - 1.0) * q * q - p.rho - dphi) / (2.0 * m);
}

std::array<double, 3> profile_system(const ProfileParams& p, const std::array<double, 3>& y) {
  return {y[1], y[2], profile_rhs(p, y[1], y[2])};
}

ODEState make_state(const ProfileParams& p, double r, double F, double phi, double dphi) {
  return {r, F, phi, dphi, profile_rhs(p, phi, dphi)};
}

double scalar_from_state(const ProfileParams& p, const ODEState& s) {
  const double m = p.n - 1.0;
  const double q = s.dphi / s.phi;
  return p.fiber_scalar / (s.phi * s.phi) - m * (m - 1.0) * q * q - 2.0 * m * s.ddphi / s.phi;
}

ODEState origin_series_start(const ProfileParams& p, double eps) {
  validate(p);
  const double n = p.n;
  const double unit = (n - 1.0) * (n - 2.0);
  if (std::abs(p.fiber_scalar - unit) > 1e-12 * unit) {
    throw PreconditionError("smooth closure at the origin needs the unit round sphere fiber, Rbar = " +
                            std::to_string(unit));
  }
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  const double b = -(p.rho + 1.0) / (6.0 * n * (n - 1.0));
  const double e2 = eps * eps;
  const double phi = eps + b * e2 * eps;
  const double dphi = 1.0 + 3.0 * b * e2;
  return {eps, 0.5 * e2 + 0.25 * b * e2 * e2, phi, dphi, profile_rhs(p, phi, dphi)};
}

}  // namespace yamabe
