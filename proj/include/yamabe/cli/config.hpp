#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yamabe/errors.hpp"
#include "yamabe/ode/integrator.hpp"
#include "yamabe/soliton/sampling.hpp"
#include "yamabe/soliton/soliton_spec.hpp"

namespace yamabe {

/// Unreadable or schema-invalid config. `key` is a path such as `metric[0][1]` or `profile.r_end`.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, std::string key, const std::string& message)
      : Error(path + ": " + (key.empty() ? std::string("<root>") : key) + ": " + message),
        path_(std::move(path)),
        key_(std::move(key)) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::string path_;
  std::string key_;
};

enum class Mode { Curvature, Verify, Profile, Classify, Report };

const char* to_string(Mode m);
std::optional<Mode> mode_from(const std::string& name);

/// A chart metric given by component expressions, optionally a soliton candidate.
struct MetricConfig {
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
  std::vector<std::vector<std::string>> rows;
  ChartBox box;
  std::optional<std::string> potential;
  std::optional<double> rho;
  std::optional<SolitonKind> kind;
};

struct ProductConfig {
  SolitonKind kind = SolitonKind::Shrinking;
  double a = 1.0;
  double rho = 1.0;
};

struct ProfileConfig {
  int n = 3;
  double fiber_scalar = 2.0;
  double rho = 0.0;
  /// Initial state (r, F, F', F''), or a start from the origin series.
  std::optional<ODEState> initial;
  std::optional<double> origin_eps;
  double r_end = 1.0;
  IntegratorOptions integrator;
  double classify_tol = 1e-6;
  std::optional<std::string> expect_label;
};

/// Cotton identities on seeded random analytic metrics.
struct BatteryConfig {
  int metrics = 8;
  int points = 16;
  int dimension = 3;
  std::uint64_t seed = 1;
  double half_width = 0.6;
};

struct OutputConfig {
  std::string dir = ".";
  std::string stem;
  std::vector<std::string> formats{"json", "csv", "markdown"};
};

struct JobConfig {
  std::string path;
  std::string name;
  std::optional<Mode> mode;
  std::optional<MetricConfig> metric;
  std::optional<ProductConfig> product;
  std::optional<ProfileConfig> profile;
  std::optional<BatteryConfig> battery;
  SampleSpec sampling;
  /// Identity names (YS, DIVB, ...) and profile checks (scalar_drift, rpp, c_balance, key3).
  std::map<std::string, double> tolerances;
  /// 0 keeps the per-job default.
  int jet_order = 0;
  double tolerance_scale = 1.0;
  bool slow = false;
  OutputConfig output;
};

/// Parses a JSON config. Throws ConfigError naming `path` and the offending key.
JobConfig parse_config(const std::string& text, const std::string& path);
JobConfig load_config(const std::string& path);

/// Checks that `mode` has what it needs. Throws ConfigError.
void validate_for_mode(const JobConfig& c, Mode mode);

}  // namespace yamabe
