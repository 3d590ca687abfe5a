#pragma once

#include <optional>
#include <vector>

#include "yamabe/ode/integrator.hpp"

namespace yamabe {

struct InvariantReport {
  /// max |c(r) - c(r0)| (n = 3).
  std::optional<double> c_drift;
  /// max |c(r) - c(r0) + (F''(r)^2 - F''(r0)^2) / 2|, the part of the drift not explained by
  /// c = Rbar/4 - F''^2/2 (n = 3).
  std::optional<double> c_balance;
  /// max key3 residual over samples with |F''| <= flat_tol (n = 3).
  std::optional<double> key3;
  /// max R'' identity residual over samples where the stencil exists.
  double rpp = 0.0;
  std::size_t rpp_samples = 0;
  /// max |R from the state - (rho + F'')|.
  double scalar_drift = 0.0;
  /// Sign of Ric(grad F, grad F) per sample: -1, 0, +1.
  std::vector<int> ric_sign;
  /// Ric(grad F, grad F) <= 0 exactly where F''' >= 0 at every sample.
  bool sign_lemma = true;
};

/// Throws PreconditionError for fewer than 3 samples.
InvariantReport track_invariants(const ProfileTrajectory& t, double flat_tol = 1e-6);

}  // namespace yamabe
