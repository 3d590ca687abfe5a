#include "yamabe/ode/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "yamabe/errors.hpp"

namespace yamabe {

InvariantReport track_invariants(const ProfileTrajectory& t, double flat_tol) {
  if (t.samples.size() < 3) throw PreconditionError("trajectory too short for invariant tracking");
  InvariantReport out;
  const auto& s0 = t.samples.front();
  const auto& d0 = t.diagnostics.front();
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const ODEState& s = t.samples[i];
    const SampleDiagnostics& d = t.diagnostics[i];
    out.scalar_drift = std::max(out.scalar_drift, std::abs(d.scalar - d.scalar_from_rho));
    if (d.c && d0.c) {
      const double drift = std::abs(*d.c - *d0.c);
      const double balance = std::abs(*d.c - *d0.c + 0.5 * (s.dphi * s.dphi - s0.dphi * s0.dphi));
      out.c_drift = std::max(out.c_drift.value_or(0.0), drift);
      out.c_balance = std::max(out.c_balance.value_or(0.0), balance);
      if (std::abs(s.dphi) <= flat_tol) out.key3 = std::max(out.key3.value_or(0.0), *d.key3_residual);
    }
    if (d.rpp_residual) {
      out.rpp = std::max(out.rpp, std::abs(*d.rpp_residual));
      ++out.rpp_samples;
    }
    const int sign = d.ric_radial > 0.0 ? 1 : (d.ric_radial < 0.0 ? -1 : 0);
    out.ric_sign.push_back(sign);
    if ((sign <= 0) != (s.ddphi >= 0.0)) out.sign_lemma = false;
  }
  return out;
}

}  // namespace yamabe
