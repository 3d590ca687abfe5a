#include "yamabe/cli/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "yamabe/expr/parser.hpp"
#include "yamabe/geometry/metric_field.hpp"

namespace yamabe {

namespace {

using nlohmann::json;

/// A JSON object together with its key path, for error messages.
class Section {
 public:
  Section(const json& j, std::string key, const std::string& path) : j_(j), key_(std::move(key)), path_(path) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_, key_, message); }
  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ConfigError(path_, child(field), message);
  }

  std::string child(const std::string& field) const { return key_.empty() ? field : key_ + "." + field; }
  bool has(const std::string& field) const { return j_.contains(field); }
  const json& raw(const std::string& field) const { return j_.at(field); }

  void allow(std::initializer_list<const char*> fields) const {
    std::set<std::string> ok(fields.begin(), fields.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) fail(k, "unknown key");
    }
  }

  Section object(const std::string& field) const { return Section(j_.at(field), child(field), path_); }

  double number(const std::string& field) const {
    if (!has(field)) fail(field, "missing required number");
    const json& v = j_.at(field);
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "expected a finite number");
    return d;
  }
  double number(const std::string& field, double fallback) const { return has(field) ? number(field) : fallback; }
  std::optional<double> optional_number(const std::string& field) const {
    return has(field) ? std::optional<double>(number(field)) : std::nullopt;
  }

  long long integer(const std::string& field, long long fallback, long long lo, long long hi) const {
    if (!has(field)) return fallback;
    const json& v = j_.at(field);
    if (!v.is_number_integer()) fail(field, "expected an integer");
    const long long i = v.get<long long>();
    if (i < lo || i > hi) fail(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return i;
  }

  std::uint64_t seed(const std::string& field, std::uint64_t fallback) const {
    if (!has(field)) return fallback;
    const json& v = j_.at(field);
    if (!v.is_number_unsigned()) fail(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& field) const {
    if (!has(field)) fail(field, "missing required string");
    const json& v = j_.at(field);
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }
  std::optional<std::string> optional_string(const std::string& field) const {
    return has(field) ? std::optional<std::string>(string(field)) : std::nullopt;
  }

  bool boolean(const std::string& field, bool fallback) const {
    if (!has(field)) return fallback;
    if (!j_.at(field).is_boolean()) fail(field, "expected true or false");
    return j_.at(field).get<bool>();
  }

  std::vector<double> numbers(const std::string& field) const {
    if (!has(field) || !j_.at(field).is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& v : j_.at(field)) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ConfigError(path_, child(field) + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(v.get<double>());
      ++i;
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& field) const {
    if (!has(field) || !j_.at(field).is_array()) fail(field, "expected an array of strings");
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& v : j_.at(field)) {
      if (!v.is_string()) throw ConfigError(path_, child(field) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(v.get<std::string>());
      ++i;
    }
    return out;
  }

  const std::string& path() const { return path_; }
  const std::string& key() const { return key_; }

 private:
  const json& j_;
  std::string key_;
  const std::string& path_;
};

std::string indexed(const std::string& key, std::size_t i, std::size_t j) {
  return key + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

SolitonKind parse_kind(const Section& n, const std::string& field) {
  const std::string s = n.string(field);
  if (s == "shrinking") return SolitonKind::Shrinking;
  if (s == "steady") return SolitonKind::Steady;
  if (s == "expanding") return SolitonKind::Expanding;
  n.fail(field, "expected shrinking, steady or expanding");
}

ChartBox parse_box(const Section& n, std::size_t dim) {
  n.allow({"lower", "upper"});
  ChartBox box{n.numbers("lower"), n.numbers("upper")};
  if (box.lower.size() != dim) n.fail("lower", "needs one entry per coordinate");
  if (box.upper.size() != dim) n.fail("upper", "needs one entry per coordinate");
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(box.lower[i] < box.upper[i])) n.fail("upper", "each upper bound must exceed the lower bound");
  }
  return box;
}

MetricConfig parse_metric(const Section& n) {
  n.allow({"coordinates", "parameters", "components", "box", "potential", "rho", "kind"});
  MetricConfig m;
  m.coordinates = n.strings("coordinates");
  const std::size_t dim = m.coordinates.size();
  if (dim < 2) n.fail("coordinates", "need at least two coordinates");
  if (std::set<std::string>(m.coordinates.begin(), m.coordinates.end()).size() != dim) {
    n.fail("coordinates", "coordinate names must be distinct");
  }
  if (n.has("parameters")) {
    const Section p = n.object("parameters");
    for (const auto& [k, v] : n.raw("parameters").items()) m.parameters[k] = p.number(k);
  }
  if (!n.has("components") || !n.raw("components").is_array()) n.fail("components", "expected an n x n array");
  const json& rows = n.raw("components");
  const std::string ckey = n.child("components");
  if (rows.size() != dim) n.fail("components", "expected " + std::to_string(dim) + " rows");
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      throw ConfigError(n.path(), ckey + "[" + std::to_string(i) + "]", "expected " + std::to_string(dim) + " entries");
    }
    std::vector<std::string> row;
    for (std::size_t j = 0; j < dim; ++j) {
      const json& v = rows[i][j];
      if (v.is_string()) {
        row.push_back(v.get<std::string>());
      } else if (v.is_number()) {
        std::ostringstream s;
        s.precision(17);
        s << v.get<double>();
        row.push_back(s.str());
      } else {
        throw ConfigError(n.path(), indexed(ckey, i, j), "expected an expression string or a number");
      }
    }
    m.rows.push_back(std::move(row));
  }
  if (!n.has("box")) n.fail("box", "missing chart box");
  m.box = parse_box(n.object("box"), dim);
  m.potential = n.optional_string("potential");
  m.rho = n.optional_number("rho");
  if (n.has("kind")) m.kind = parse_kind(n, "kind");

  // Parse every expression so errors point at their key.
  std::vector<std::string> declared = m.coordinates;
  for (const auto& [k, v] : m.parameters) declared.push_back(k);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      try {
        (void)parse(m.rows[i][j], declared);
      } catch (const ParseError& e) {
        throw ConfigError(n.path(), indexed(ckey, i, j), e.what());
      }
    }
  }
  if (m.potential) {
    try {
      (void)parse(*m.potential, declared);
    } catch (const ParseError& e) {
      throw ConfigError(n.path(), n.child("potential"), e.what());
    }
  }
  const MetricField field = make_metric_field(m.coordinates, m.parameters, m.rows);
  const auto samples = sample_points(m.box, {8, 0, 0.05});
  if (const auto bad = find_asymmetry(field, samples)) {
    throw ConfigError(n.path(), indexed(ckey, static_cast<std::size_t>(bad->first), static_cast<std::size_t>(bad->second)),
                      "metric matrix is not symmetric");
  }
  return m;
}

ProductConfig parse_product(const Section& n) {
  n.allow({"kind", "a", "rho"});
  ProductConfig p{parse_kind(n, "kind"), n.number("a"), n.number("rho")};
  if (p.kind == SolitonKind::Steady) n.fail("kind", "products are shrinking or expanding");
  if (!(p.a > 0.0)) n.fail("a", "must be positive");
  if (kind_of(p.rho) != p.kind) n.fail("rho", "sign does not match kind");
  return p;
}

ProfileConfig parse_profile(const Section& n) {
  n.allow({"n", "fiber_scalar", "rho", "initial", "origin", "r_end", "rel_tol", "abs_tol", "max_step", "max_steps",
           "stencil_step", "classify_tol", "expect"});
  ProfileConfig p;
  p.n = static_cast<int>(n.integer("n", 3, 3, 16));
  p.fiber_scalar = n.number("fiber_scalar");
  p.rho = n.number("rho");
  if (n.has("initial")) {
    const Section ic = n.object("initial");
    ic.allow({"r", "F", "Fp", "Fpp"});
    ODEState s;
    s.r = ic.number("r", 0.0);
    s.F = ic.number("F", 0.0);
    s.phi = ic.number("Fp");
    s.dphi = ic.number("Fpp");
    if (!(s.phi > 0.0)) ic.fail("Fp", "must be positive");
    p.initial = s;
  }
  if (n.has("origin")) {
    const Section o = n.object("origin");
    o.allow({"eps"});
    p.origin_eps = o.number("eps", 1e-4);
    if (!(*p.origin_eps > 0.0)) o.fail("eps", "must be positive");
    const double unit = (p.n - 1.0) * (p.n - 2.0);
    if (std::abs(p.fiber_scalar - unit) > 1e-12 * unit) {
      n.fail("fiber_scalar", "an origin start needs the unit sphere value " + std::to_string(unit));
    }
  }
  if (p.initial && p.origin_eps) n.fail("origin", "give either initial or origin, not both");
  p.r_end = n.number("r_end");
  const double r0 = p.initial ? p.initial->r : p.origin_eps.value_or(0.0);
  if (!(p.r_end > r0)) n.fail("r_end", "must exceed the starting radius");
  p.integrator.rel_tol = n.number("rel_tol", p.integrator.rel_tol);
  p.integrator.abs_tol = n.number("abs_tol", p.integrator.abs_tol);
  p.integrator.max_step = n.number("max_step", p.integrator.max_step);
  p.integrator.stencil_step = n.number("stencil_step", p.integrator.stencil_step);
  p.integrator.max_steps = static_cast<std::size_t>(
      n.integer("max_steps", static_cast<long long>(p.integrator.max_steps), 1, 100000000));
  try {
    validate(p.integrator);
  } catch (const PreconditionError& e) {
    n.fail(e.what());
  }
  p.classify_tol = n.number("classify_tol", p.classify_tol);
  if (!(p.classify_tol > 0.0)) n.fail("classify_tol", "must be positive");
  p.expect_label = n.optional_string("expect");
  return p;
}

BatteryConfig parse_battery(const Section& n) {
  n.allow({"metrics", "points", "dimension", "seed", "half_width"});
  BatteryConfig b;
  b.metrics = static_cast<int>(n.integer("metrics", b.metrics, 1, 10000));
  b.points = static_cast<int>(n.integer("points", b.points, 1, 100000));
  b.dimension = static_cast<int>(n.integer("dimension", b.dimension, 3, 3));
  b.seed = n.seed("seed", b.seed);
  b.half_width = n.number("half_width", b.half_width);
  if (!(b.half_width > 0.0)) n.fail("half_width", "must be positive");
  return b;
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Curvature: return "curvature";
    case Mode::Verify: return "verify";
    case Mode::Profile: return "profile";
    case Mode::Classify: return "classify";
    case Mode::Report: return "report";
  }
  return "report";
}

std::optional<Mode> mode_from(const std::string& name) {
  for (Mode m : {Mode::Curvature, Mode::Verify, Mode::Profile, Mode::Classify, Mode::Report}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

JobConfig parse_config(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, "", std::string("invalid JSON: ") + e.what());
  }
  const Section root(j, "", path);
  root.allow({"name", "mode", "metric", "product", "profile", "battery", "sampling", "tolerances", "jet_order",
              "tol_scale", "slow", "output"});
  JobConfig c;
  c.path = path;
  c.name = root.has("name") ? root.string("name") : std::filesystem::path(path).stem().string();
  if (root.has("mode")) {
    c.mode = mode_from(root.string("mode"));
    if (!c.mode) root.fail("mode", "expected curvature, verify, profile, classify or report");
  }
  if (root.has("metric")) c.metric = parse_metric(root.object("metric"));
  if (root.has("product")) c.product = parse_product(root.object("product"));
  if (root.has("profile")) c.profile = parse_profile(root.object("profile"));
  if (root.has("battery")) c.battery = parse_battery(root.object("battery"));
  if (root.has("sampling")) {
    const Section s = root.object("sampling");
    s.allow({"count", "seed", "margin"});
    c.sampling.count = static_cast<std::size_t>(s.integer("count", 64, 1, 1000000));
    c.sampling.seed = s.seed("seed", 0);
    c.sampling.margin = s.number("margin", 0.05);
    if (!(c.sampling.margin >= 0.0 && c.sampling.margin < 0.5)) s.fail("margin", "must lie in [0, 0.5)");
  }
  if (root.has("tolerances")) {
    const Section t = root.object("tolerances");
    for (const auto& [k, v] : root.raw("tolerances").items()) {
      c.tolerances[k] = t.number(k);
      if (!(c.tolerances[k] > 0.0)) t.fail(k, "must be positive");
    }
  }
  c.jet_order = static_cast<int>(root.integer("jet_order", 0, 0, 8));
  c.tolerance_scale = root.number("tol_scale", 1.0);
  if (!(c.tolerance_scale > 0.0)) root.fail("tol_scale", "must be positive");
  c.slow = root.boolean("slow", false);
  if (root.has("output")) {
    const Section o = root.object("output");
    o.allow({"dir", "stem", "formats"});
    if (o.has("dir")) c.output.dir = o.string("dir");
    if (o.has("stem")) c.output.stem = o.string("stem");
    if (o.has("formats")) {
      c.output.formats = o.strings("formats");
      for (std::size_t i = 0; i < c.output.formats.size(); ++i) {
        const auto& f = c.output.formats[i];
        if (f != "json" && f != "csv" && f != "markdown" && f != "svg") {
          throw ConfigError(path, "output.formats[" + std::to_string(i) + "]", "expected json, csv, markdown or svg");
        }
      }
    }
  }
  if (c.output.stem.empty()) c.output.stem = c.name;
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "", "cannot read config file");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str(), path);
}

void validate_for_mode(const JobConfig& c, Mode mode) {
  auto need = [&](bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(c.path, key, message);
  };
  const bool soliton = c.metric && c.metric->potential && c.metric->rho;
  switch (mode) {
    case Mode::Curvature:
      need(c.metric.has_value(), "metric", "curvature mode needs a metric");
      break;
    case Mode::Verify:
      need(c.metric || c.product || c.battery, "metric", "verify mode needs a metric, product or battery");
      if (c.metric && !soliton) {
        need(!c.metric->potential && !c.metric->rho, c.metric->rho ? "metric.potential" : "metric.rho",
             "a soliton check needs both potential and rho");
      }
      break;
    case Mode::Profile:
      need(c.profile || c.product, "profile", "profile mode needs a profile or product section");
      if (c.profile) {
        need(c.profile->initial || c.profile->origin_eps, "profile.initial",
             "profile mode needs initial conditions or an origin start");
      }
      break;
    case Mode::Classify:
      need(c.profile || c.product, "profile", "classify mode needs a profile or product section");
      if (c.profile) {
        need(c.profile->initial || c.profile->origin_eps, "profile.initial",
             "classify mode needs initial conditions or an origin start");
      }
      break;
    case Mode::Report:
      need(c.metric || c.product || c.battery || c.profile, "", "nothing to report");
      if (c.profile) {
        need(c.profile->initial || c.profile->origin_eps, "profile.initial",
             "report mode needs initial conditions or an origin start for the profile");
      }
      break;
  }
}

}  // namespace yamabe
