#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "yamabe/ode/profile_ode.hpp"

namespace yamabe {

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Zero picks a starting step from the tolerances.
  double initial_step = 0.0;
  double max_step = 0.1;
  std::size_t max_steps = 1000000;
  /// Trajectories stop once phi falls below this.
  double phi_floor = 1e-8;
  /// Any state magnitude above this counts as blow-up.
  double blowup = 1e12;
  /// Stencil spacing for R''. Shrunk near the origin to stay inside phi > 0.
  double stencil_step = 1e-2;
};

/// Throws PreconditionError for non-positive or non-finite tolerances.
void validate(const IntegratorOptions& o);

enum class IntegrationStatus { Completed, Singularity, BlowUp, StepUnderflow, MaxSteps };

const char* to_string(IntegrationStatus s);

/// Diagnostics at one accepted sample.
struct SampleDiagnostics {
  /// R from the state via the warped scalar-curvature formula.
  double scalar = 0.0;
  /// rho + F''.
  double scalar_from_rho = 0.0;
  /// (R/4) F'^2 + F' F''' (n = 3 only).
  std::optional<double> c;
  /// |R F'^2 / 4 - c| = |F' F'''| (n = 3 only).
  std::optional<double> key3_residual;
  /// R'' + (n-1)(F''/F') R' + F' R' / (2(n-1)) + R (R - rho) / (n-1), with R' = F''' and R''
  /// from a five-point stencil. Missing where the stencil leaves phi > 0.
  std::optional<double> rpp_residual;
  /// Ric(grad F, grad F) = -(n-1) F' F'''.
  double ric_radial = 0.0;
};

struct ProfileTrajectory {
  ProfileParams params;
  IntegratorOptions options;
  std::vector<ODEState> samples;
  std::vector<SampleDiagnostics> diagnostics;
  IntegrationStatus status = IntegrationStatus::Completed;
  std::string message;
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  /// Started from origin_series_start.
  bool from_origin = false;
  double origin_eps = 0.0;

  const ODEState& last() const { return samples.back(); }
};

/// Adaptive Dormand-Prince 5(4) integration of the profile system from `ic` to `r_end`, with
/// per-component error control |err_i| <= rel_tol |y_i| + abs_tol. Stops early with a status
/// at phi -> 0+, blow-up, step underflow or the step budget; the trajectory then ends at the
/// last valid state. Throws PreconditionError for phi <= 0 at the start, r_end <= ic.r, or
/// invalid tolerances.
ProfileTrajectory integrate(const ProfileParams& p, const ODEState& ic, double r_end,
                            const IntegratorOptions& opts = {});

/// integrate() from origin_series_start(p, eps).
ProfileTrajectory integrate_from_origin(const ProfileParams& p, double eps, double r_end,
                                        const IntegratorOptions& opts = {});

/// Classical RK4 transport of a state by dr (either sign) in `substeps` equal steps.
/// Throws DomainError if phi leaves (0, inf).
ODEState transport(const ProfileParams& p, const ODEState& s, double dr, int substeps = 16);

/// Cubic Hermite dense output of (F, phi, phi') at r inside the sampled range.
ODEState dense_state(const ProfileTrajectory& t, double r);

}  // namespace yamabe
