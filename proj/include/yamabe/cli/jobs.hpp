#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "yamabe/cli/config.hpp"
#include "yamabe/geometry/metric_field.hpp"
#include "yamabe/ode/classify.hpp"
#include "yamabe/ode/invariants.hpp"
#include "yamabe/soliton/identities.hpp"

namespace yamabe {

/// One asserted quantity.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed() const { return value <= tolerance; }
};

struct CurvatureRow {
  std::vector<double> point;
  double scalar = 0.0;
  double ricci_max = 0.0;
  double riemann_max = 0.0;
  double weyl_max = 0.0;
  double cotton_max = 0.0;
  double condition = 0.0;
};

struct BatteryEntry {
  std::uint64_t seed = 0;
  IdentityReport report;
};

struct JobResult {
  std::string name;
  Mode mode = Mode::Report;
  std::vector<std::string> coordinates;
  std::vector<CurvatureRow> curvature;
  std::optional<IdentityReport> soliton;
  std::optional<IdentityReport> cotton;
  std::vector<BatteryEntry> battery;
  std::optional<ProfileTrajectory> trajectory;
  std::optional<InvariantReport> invariants;
  std::optional<Classification> classification;
  std::vector<Check> checks;
  bool numerical_failure = false;
  std::vector<std::string> messages;

  bool empty() const;
  /// 3 on numerical failure, 2 when a check fails, 0 otherwise.
  int exit_code() const;
};

/// Command-line overrides applied on top of the config.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance_scale;
  std::optional<int> jet_order;
  bool slow = false;
};

/// Runs the job for `mode`. Throws ConfigError for missing sections and lets numerical
/// library errors through only when they are not recoverable as a failed job.
JobResult run_job(const JobConfig& config, Mode mode, const Overrides& overrides = {});

/// Seeded analytic metric near the identity, components built from sin, cos and exp of
/// affine phases in the coordinates x1..xn.
MetricField random_analytic_metric(std::uint64_t seed, int n);

}  // namespace yamabe
