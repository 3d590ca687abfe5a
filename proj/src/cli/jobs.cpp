#include "yamabe/cli/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "yamabe/expr/parser.hpp"
#include "yamabe/geometry/curvature.hpp"
#include "yamabe/ode/profile_ode.hpp"
#include "yamabe/soliton/sampling.hpp"
#include "yamabe/warped/product.hpp"

namespace yamabe {

bool JobResult::empty() const {
  return curvature.empty() && !soliton && !cotton && battery.empty() && !trajectory && !classification &&
         checks.empty();
}

int JobResult::exit_code() const {
  if (numerical_failure) return 3;
  for (const auto& c : checks)
    if (!c.passed()) return 2;
  return 0;
}

MetricField random_analytic_metric(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.8, 0.8);
  std::vector<std::string> coords;
  for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
  auto phase = [&] {
    std::string s;
    char buf[64];
    for (const auto& v : coords) {
      std::snprintf(buf, sizeof buf, "%.4f*%s + ", coef(rng), v.c_str());
      s += buf;
    }
    std::snprintf(buf, sizeof buf, "%.4f", coef(rng));
    return s + buf;
  };
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<std::string>> rows(un, std::vector<std::string>(un));
  for (std::size_t i = 0; i < un; ++i) {
    rows[i][i] = "1 + 0.2*sin(" + phase() + ") + 0.1*cos(" + phase() + ")^2";
    for (std::size_t j = i + 1; j < un; ++j) {
      rows[i][j] = "0.1*sin(" + phase() + ")*exp(0.3*cos(" + phase() + "))/1.35";
      rows[j][i] = rows[i][j];
    }
  }
  return make_metric_field(coords, {}, rows);
}

namespace {

class Runner {
 public:
  Runner(const JobConfig& c, const Overrides& o) : c_(c), o_(o) {
    scale_ = o.tolerance_scale.value_or(c.tolerance_scale);
    sampling_ = c.sampling;
    if (o.seed) sampling_.seed = *o.seed;
    slow_ = o.slow || c.slow;
  }

  double tol(const std::string& name, double fallback) const {
    const auto it = c_.tolerances.find(name);
    return (it == c_.tolerances.end() ? fallback : it->second) * scale_;
  }

  int jet_order(int fallback) const {
    if (o_.jet_order) return *o_.jet_order;
    return c_.jet_order > 0 ? c_.jet_order : fallback;
  }

  std::map<IdentityKey, double> identity_tolerances() const {
    std::map<IdentityKey, double> out;
    for (const auto& [k, v] : c_.tolerances)
      if (const auto key = identity_key_from(k)) out[*key] = v;
    return out;
  }

  MetricField metric_field() const {
    const MetricConfig& m = *c_.metric;
    return make_metric_field(m.coordinates, m.parameters, m.rows, m.potential);
  }

  void curvature(JobResult& r) {
    const MetricField field = metric_field();
    r.coordinates = field.coordinates;
    for (const auto& p : sample_points(c_.metric->box, sampling_)) {
      try {
        const CurvaturePack pack = curvature_pack(field, p, 3, false);
        r.curvature.push_back({p, pack.scalar, pack.ricci.max_abs(), pack.riemann.max_abs(), pack.weyl.max_abs(),
                               pack.cotton.max_abs(), pack.diagnostics.condition_number});
      } catch (const SingularMetricError& e) {
        fail(r, std::string("curvature: ") + e.what());
        return;
      }
    }
  }

  void add_identity_checks(JobResult& r, const IdentityReport& rep, const std::string& prefix, bool gated) {
    for (const auto& s : rep.summaries) {
      const bool derived = s.key == IdentityKey::P2 || s.key == IdentityKey::P3 || s.key == IdentityKey::P4 ||
                           s.key == IdentityKey::P5;
      if (gated && derived && rep.gate_passed && !*rep.gate_passed) continue;
      r.checks.push_back({prefix + to_string(s.key), s.max_residual, s.tolerance});
    }
  }

  void soliton(JobResult& r, const SolitonSpec& spec, const std::string& prefix) {
    const auto points = sample_points(spec.box, sampling_);
    IdentityOptions opts;
    opts.jet_order = jet_order(4);
    opts.gate_tolerance = tol("gate", 1e-8);
    opts.tolerance_scale = scale_;
    opts.tolerances = identity_tolerances();
    r.coordinates = spec.metric.coordinates;
    r.soliton = identity_report(spec, points, opts);
    r.checks.push_back({prefix + "gate", r.soliton->find(IdentityKey::YS)->max_residual, opts.gate_tolerance});
    add_identity_checks(r, *r.soliton, prefix, true);
  }

  void cotton(JobResult& r, const MetricField& field, const ChartBox& box) {
    r.coordinates = field.coordinates;
    r.cotton = cotton_identities(field, sample_points(box, sampling_), cotton_options());
    add_identity_checks(r, *r.cotton, "", false);
  }

  CottonOptions cotton_options() const {
    CottonOptions opts;
    opts.jet_order = jet_order(5);
    opts.include_ddiv = slow_;
    opts.tolerance_scale = scale_;
    opts.tolerances = identity_tolerances();
    return opts;
  }

  void battery(JobResult& r) {
    const BatteryConfig& b = *c_.battery;
    const std::uint64_t base = o_.seed.value_or(b.seed);
    const std::vector<double> lo(static_cast<std::size_t>(b.dimension), -b.half_width);
    const std::vector<double> hi(static_cast<std::size_t>(b.dimension), b.half_width);
    const CottonOptions opts = cotton_options();
    std::map<IdentityKey, Check> worst;
    for (int k = 0; k < b.metrics; ++k) {
      const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
      const MetricField m = random_analytic_metric(seed, b.dimension);
      if (r.coordinates.empty()) r.coordinates = m.coordinates;
      const auto points = sample_points({lo, hi}, {static_cast<std::size_t>(b.points), seed, 0.0});
      BatteryEntry e{seed, cotton_identities(m, points, opts)};
      for (const auto& s : e.report.summaries) {
        auto [it, fresh] = worst.try_emplace(s.key, Check{std::string("battery.") + to_string(s.key), 0.0, s.tolerance});
        it->second.value = std::max(it->second.value, s.max_residual);
      }
      r.battery.push_back(std::move(e));
    }
    for (const auto& [k, c] : worst) r.checks.push_back(c);
  }

  void verify(JobResult& r) {
    if (c_.metric) {
      const MetricField field = metric_field();
      if (c_.metric->potential) {
        const SolitonSpec spec = [&] {
          try {
            return make_soliton_spec(field, *field.potential, *c_.metric->rho, c_.metric->box, c_.metric->kind);
          } catch (const PreconditionError& e) {
            throw ConfigError(c_.path, "metric.kind", e.what());
          }
        }();
        soliton(r, spec, "");
      } else {
        if (field.dim() != 3) throw ConfigError(c_.path, "metric.coordinates", "Cotton identities need dimension 3");
        cotton(r, field, c_.metric->box);
      }
    }
    if (c_.product) {
      const ProductConfig& p = *c_.product;
      const ProductSoliton ps = build_product_soliton(p.kind, p.a, p.rho);
      soliton(r, ps.spec, "product.");
      double worst = 0.0;
      for (const auto& pt : r.soliton->points) worst = std::max(worst, std::abs(ricci_scalar(ps.spec.metric, pt).second - p.rho));
      r.checks.push_back({"product.R-rho", worst, tol("R-rho", 1e-10)});
      r.messages.push_back("product fiber scalar curvature " + num(ps.fiber_scalar) + ", assembled fiber curvature " +
                           num(ps.effective_fiber_curvature));
    }
    if (c_.battery) battery(r);
  }

  /// Profile section, or the fixed point of a product section.
  ProfileConfig profile_config() const {
    if (c_.profile) return *c_.profile;
    const ProductConfig& p = *c_.product;
    ProfileConfig pc;
    pc.n = 3;
    pc.fiber_scalar = p.rho * p.a * p.a;
    pc.rho = p.rho;
    pc.initial = ODEState{0.0, 0.0, p.a, 0.0, 0.0};
    pc.r_end = 2.0;
    return pc;
  }

  void profile(JobResult& r, bool with_checks) {
    const ProfileConfig pc = profile_config();
    const ProfileParams params{pc.n, pc.fiber_scalar, pc.rho};
    ProfileTrajectory t;
    if (pc.origin_eps) {
      t = integrate_from_origin(params, *pc.origin_eps, pc.r_end, pc.integrator);
    } else {
      t = integrate(params, make_state(params, pc.initial->r, pc.initial->F, pc.initial->phi, pc.initial->dphi),
                    pc.r_end, pc.integrator);
    }
    if (t.status != IntegrationStatus::Completed) fail(r, std::string("integration: ") + to_string(t.status) + ": " + t.message);
    if (t.samples.size() >= 3) {
      r.invariants = track_invariants(t, pc.classify_tol);
      if (with_checks) {
        const InvariantReport& inv = *r.invariants;
        r.checks.push_back({"profile.scalar_drift", inv.scalar_drift, tol("scalar_drift", 1e-9)});
        r.checks.push_back({"profile.rpp", inv.rpp, tol("rpp", 1e-5)});
        r.checks.push_back({"profile.sign_lemma", inv.sign_lemma ? 0.0 : 1.0, 0.0});
        if (inv.c_balance) r.checks.push_back({"profile.c_balance", *inv.c_balance, tol("c_balance", 1e-6)});
        if (inv.key3) r.checks.push_back({"profile.key3", *inv.key3, tol("key3", 1e-9)});
      }
    } else if (t.status == IntegrationStatus::Completed) {
      fail(r, "trajectory too short for invariant tracking");
    }
    r.trajectory = std::move(t);
  }

  void classify(JobResult& r) {
    if (!r.trajectory) profile(r, false);
    const ProfileConfig pc = profile_config();
    r.classification = yamabe::classify(*r.trajectory, pc.rho, pc.classify_tol);
    std::optional<std::string> expect = pc.expect_label;
    if (!c_.profile && c_.product) {
      expect = c_.product->kind == SolitonKind::Shrinking ? "shrinking_product" : "expanding_product";
    }
    if (expect) {
      const bool match = *expect == to_string(r.classification->label);
      r.checks.push_back({"classify.label", match ? 0.0 : 1.0, 0.0});
      if (!match) r.messages.push_back("expected label " + *expect + ", got " + to_string(r.classification->label));
    }
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

  static void fail(JobResult& r, const std::string& message) {
    r.numerical_failure = true;
    r.messages.push_back(message);
  }

 private:
  const JobConfig& c_;
  const Overrides& o_;
  double scale_ = 1.0;
  SampleSpec sampling_;
  bool slow_ = false;
};

}  // namespace

JobResult run_job(const JobConfig& config, Mode mode, const Overrides& overrides) {
  validate_for_mode(config, mode);
  if (overrides.jet_order && (*overrides.jet_order < 1 || *overrides.jet_order > 8)) {
    throw ConfigError(config.path, "jet_order", "must lie in [1, 8]");
  }
  Runner run(config, overrides);
  JobResult r;
  r.name = config.name;
  r.mode = mode;
  try {
    switch (mode) {
      case Mode::Curvature:
        run.curvature(r);
        break;
      case Mode::Verify:
        run.verify(r);
        break;
      case Mode::Profile:
        run.profile(r, true);
        break;
      case Mode::Classify:
        run.classify(r);
        break;
      case Mode::Report:
        if (config.metric) run.curvature(r);
        if (config.metric || config.product || config.battery) run.verify(r);
        if (config.profile || config.product) {
          run.profile(r, true);
          run.classify(r);
        }
        break;
    }
  } catch (const OrderError& e) {
    throw ConfigError(config.path, "jet_order", e.what());
  } catch (const DomainError& e) {
    r.numerical_failure = true;
    r.messages.push_back(std::string("numerical failure: ") + e.what());
  } catch (const SingularMetricError& e) {
    r.numerical_failure = true;
    r.messages.push_back(std::string("singular metric: ") + e.what());
  } catch (const IntegrationError& e) {
    r.numerical_failure = true;
    r.messages.push_back(std::string("integration failure: ") + e.what());
  }
  return r;
}

}  // namespace yamabe
