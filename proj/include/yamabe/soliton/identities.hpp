#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yamabe/soliton/soliton_spec.hpp"

namespace yamabe {

enum class IdentityKey { YS, TYS, P1, P2, P3, P4, P5, DIVB, M2, DDIV };

const char* to_string(IdentityKey key);
std::optional<IdentityKey> identity_key_from(const std::string& name);
/// Default residual tolerance for an identity.
double default_tolerance(IdentityKey key);

/// One identity at one point. `residual` is the reported value: the larger of the jet
/// and difference evaluations when both exist.
struct IdentityRow {
  IdentityKey key = IdentityKey::YS;
  std::size_t point_index = 0;
  double residual = 0.0;
  double jet_residual = 0.0;
  std::optional<double> fd_residual;
};

struct IdentitySummary {
  IdentityKey key = IdentityKey::YS;
  double max_residual = 0.0;
  std::size_t worst_index = 0;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  bool passed() const { return max_residual <= tolerance; }
};

struct IdentityReport {
  std::vector<std::vector<double>> points;
  std::vector<IdentitySummary> summaries;
  std::vector<IdentityRow> rows;
  /// Points skipped because the metric was singular there (only with skip_singular).
  std::vector<std::size_t> skipped;
  /// Whether the YS residual stayed within the gate at every point (identity_report only).
  std::optional<bool> gate_passed;
  double gate_tolerance = 0.0;
  std::vector<std::string> notes;

  const IdentitySummary* find(IdentityKey key) const;
  bool all_passed() const;
};

struct IdentityOptions {
  int jet_order = 4;
  double gate_tolerance = 1e-8;
  /// Step for the Richardson-extrapolated difference check of the R derivatives; 0 disables it.
  double fd_step = 2e-3;
  bool skip_singular = false;
  double tolerance_scale = 1.0;
  std::map<IdentityKey, double> tolerances;
};

/// Residuals of YS, TYS and P1 to P5 at every point. Covector identities (P1, P2) are
/// measured in the metric norm, YS by its largest component.
IdentityReport identity_report(const SolitonSpec& s, std::span<const std::vector<double>> points,
                               const IdentityOptions& options = {});

struct CottonOptions {
  int jet_order = 5;
  /// Adds DDIV, which needs jet order 6.
  bool include_ddiv = false;
  bool skip_singular = false;
  double tolerance_scale = 1.0;
  std::map<IdentityKey, double> tolerances;
};

/// DIVB, M2 and (optionally) DDIV for a 3-metric. Throws DimensionError for n != 3.
IdentityReport cotton_identities(const MetricField& m, std::span<const std::vector<double>> points,
                                 const CottonOptions& options = {});

}  // namespace yamabe
