#include "yamabe/soliton/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "yamabe/errors.hpp"
#include "yamabe/geometry/local_geometry.hpp"

namespace yamabe {

namespace {

constexpr std::array kAllKeys{IdentityKey::YS, IdentityKey::TYS, IdentityKey::P1,   IdentityKey::P2,
                              IdentityKey::P3, IdentityKey::P4,  IdentityKey::P5,   IdentityKey::DIVB,
                              IdentityKey::M2, IdentityKey::DDIV};

double covector_norm(std::span<const double> v, const TensorValue& ginv) {
  const int n = ginv.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += ginv({i, j}) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  }
  return std::sqrt(std::abs(s));
}

double tolerance_for(IdentityKey key, const std::map<IdentityKey, double>& overrides, double scale) {
  auto it = overrides.find(key);
  return (it != overrides.end() ? it->second : default_tolerance(key)) * scale;
}

class ReportBuilder {
 public:
  ReportBuilder(std::span<const std::vector<double>> points, std::vector<IdentityKey> keys,
                const std::map<IdentityKey, double>& overrides, double scale) {
    report_.points.assign(points.begin(), points.end());
    for (IdentityKey k : keys) report_.summaries.push_back({k, 0.0, 0, tolerance_for(k, overrides, scale), 0});
  }

  void add(IdentityKey key, std::size_t point, double jet, std::optional<double> fd = std::nullopt) {
    const double reported = fd ? std::max(std::abs(jet), std::abs(*fd)) : std::abs(jet);
    if (!std::isfinite(reported)) {
      throw DomainError(std::string("non-finite ") + to_string(key) + " residual at sample " + std::to_string(point));
    }
    report_.rows.push_back({key, point, reported, std::abs(jet), fd ? std::optional(std::abs(*fd)) : std::nullopt});
    for (auto& s : report_.summaries) {
      if (s.key != key) continue;
      if (s.evaluated == 0 || reported > s.max_residual) {
        s.max_residual = reported;
        s.worst_index = point;
      }
      ++s.evaluated;
    }
  }

  IdentityReport& report() { return report_; }

 private:
  IdentityReport report_;
};

/// Runs `body(i)` for each point, recording singular points when skipping is allowed.
template <class Body>
void for_each_point(std::span<const std::vector<double>> points, bool skip_singular, IdentityReport& report,
                    Body body) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      body(i);
    } catch (const SingularMetricError& e) {
      if (!skip_singular) throw;
      report.skipped.push_back(i);
      report.notes.push_back("skipped sample " + std::to_string(i) + ": " + e.what());
    }
  }
}

struct ScalarDerivatives {
  std::vector<double> gradient;
  std::vector<double> hessian;  // row-major partial derivatives
};

/// First and second partial derivatives of R by central differences, Richardson-extrapolated
/// from steps h and 2h.
ScalarDerivatives scalar_curvature_differences(const MetricField& m, std::span<const double> p, double h) {
  const int n = m.dim();
  auto r_at = [&](std::vector<double> q) { return LocalGeometry(m, q, 2).scalar().value(); };
  const std::vector<double> p0(p.begin(), p.end());
  const double r0 = r_at(p0);
  auto shifted = [&](int i, double di, int j, double dj) {
    std::vector<double> q = p0;
    q[static_cast<std::size_t>(i)] += di;
    if (j >= 0) q[static_cast<std::size_t>(j)] += dj;
    return r_at(q);
  };
  ScalarDerivatives d;
  d.gradient.assign(static_cast<std::size_t>(n), 0.0);
  d.hessian.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    double first[2];
    double second[2];
    for (int s = 0; s < 2; ++s) {
      const double step = s == 0 ? h : 2.0 * h;
      const double plus = shifted(i, step, -1, 0.0);
      const double minus = shifted(i, -step, -1, 0.0);
      first[s] = (plus - minus) / (2.0 * step);
      second[s] = (plus - 2.0 * r0 + minus) / (step * step);
    }
    d.gradient[static_cast<std::size_t>(i)] = (4.0 * first[0] - first[1]) / 3.0;
    d.hessian[static_cast<std::size_t>(i * n + i)] = (4.0 * second[0] - second[1]) / 3.0;
    for (int j = i + 1; j < n; ++j) {
      double mixed[2];
      for (int s = 0; s < 2; ++s) {
        const double step = s == 0 ? h : 2.0 * h;
        mixed[s] = (shifted(i, step, j, step) - shifted(i, step, j, -step) - shifted(i, -step, j, step) +
                    shifted(i, -step, j, -step)) /
                   (4.0 * step * step);
      }
      const double v = (4.0 * mixed[0] - mixed[1]) / 3.0;
      d.hessian[static_cast<std::size_t>(i * n + j)] = v;
      d.hessian[static_cast<std::size_t>(j * n + i)] = v;
    }
  }
  return d;
}

/// Residuals of P2 to P5 given dR and Delta R.
struct RIdentities {
  double p2, p3, p4, p5;
};

RIdentities r_identities(int n, double rho, double r, std::span<const double> dr, double lap_r,
                         std::span<const double> df, const TensorValue& ric, const TensorValue& ginv) {
  std::vector<double> df_up(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) df_up[static_cast<std::size_t>(i)] += ginv({i, j}) * df[static_cast<std::size_t>(j)];
  }
  std::vector<double> p2(static_cast<std::size_t>(n));
  double grad_r_f = 0.0;
  double ric_ff = 0.0;
  for (int i = 0; i < n; ++i) {
    double ric_df = 0.0;
    for (int l = 0; l < n; ++l) ric_df += ric({i, l}) * df_up[static_cast<std::size_t>(l)];
    p2[static_cast<std::size_t>(i)] = (n - 1) * dr[static_cast<std::size_t>(i)] + ric_df;
    grad_r_f += dr[static_cast<std::size_t>(i)] * df_up[static_cast<std::size_t>(i)];
    ric_ff += ric_df * df_up[static_cast<std::size_t>(i)];
  }
  const double nm1 = n - 1.0;
  return {covector_norm(p2, ginv), nm1 * grad_r_f + ric_ff, nm1 * lap_r + 0.5 * grad_r_f + r * (r - rho),
          lap_r - (ric_ff / (2.0 * nm1 * nm1) - r * (r - rho) / nm1)};
}

}  // namespace

const char* to_string(IdentityKey key) {
  switch (key) {
    case IdentityKey::YS: return "YS";
    case IdentityKey::TYS: return "TYS";
    case IdentityKey::P1: return "P1";
    case IdentityKey::P2: return "P2";
    case IdentityKey::P3: return "P3";
    case IdentityKey::P4: return "P4";
    case IdentityKey::P5: return "P5";
    case IdentityKey::DIVB: return "DIVB";
    case IdentityKey::M2: return "M2";
    case IdentityKey::DDIV: return "DDIV";
  }
  return "?";
}

std::optional<IdentityKey> identity_key_from(const std::string& name) {
  for (IdentityKey k : kAllKeys) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

double default_tolerance(IdentityKey key) {
  switch (key) {
    case IdentityKey::DIVB: return 1e-5;
    case IdentityKey::M2: return 1e-6;
    case IdentityKey::DDIV: return 1e-4;
    default: return 1e-8;
  }
}

const IdentitySummary* IdentityReport::find(IdentityKey key) const {
  for (const auto& s : summaries) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

bool IdentityReport::all_passed() const {
  return std::all_of(summaries.begin(), summaries.end(), [](const IdentitySummary& s) { return s.passed(); });
}

IdentityReport identity_report(const SolitonSpec& s, std::span<const std::vector<double>> points,
                               const IdentityOptions& options) {
  if (options.jet_order < 4) throw OrderError("soliton identities need metric jets of order >= 4");
  const int n = s.metric.dim();
  const int order = options.jet_order;
  ReportBuilder builder(points,
                        {IdentityKey::YS, IdentityKey::TYS, IdentityKey::P1, IdentityKey::P2, IdentityKey::P3,
                         IdentityKey::P4, IdentityKey::P5},
                        options.tolerances, options.tolerance_scale);
  IdentityReport& report = builder.report();
  report.gate_tolerance = options.gate_tolerance;
  bool gate = true;

  for_each_point(points, options.skip_singular, report, [&](std::size_t idx) {
    const auto& p = points[idx];
    LocalGeometry geo(s.metric, p, order);
    const Jet f = geo.scalar_field(s.potential);
    const JetTensor df = geo.gradient(f);
    const JetTensor hess = geo.hessian(f);
    const Jet& r = geo.scalar();
    const TensorValue g = geo.metric().value();
    const TensorValue ginv = geo.inverse_metric().value();
    const TensorValue ric = geo.ricci().value();
    const double r0 = r.value();

    // YS and its trace
    double ys = 0.0;
    double lap_f = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double h = hess.at({i, j}).value();
        ys = std::max(ys, std::abs(h - (r0 - s.rho) * g({i, j})));
        lap_f += ginv({i, j}) * h;
      }
    }
    builder.add(IdentityKey::YS, idx, ys);
    if (ys > options.gate_tolerance) gate = false;
    builder.add(IdentityKey::TYS, idx, n * (r0 - s.rho) - lap_f);

    // P1: Delta nabla_i F - nabla_i Delta F - R_ij nabla^j F
    const JetTensor d3 = geo.covariant_derivative(hess);
    const Jet lap_f_jet = geo.laplacian(f);
    std::vector<double> dfv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dfv[static_cast<std::size_t>(i)] = df.at({i}).value();
    std::vector<double> p1(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double v = -lap_f_jet.derivative(i).value();
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          v += ginv({a, b}) * d3.at({a, b, i}).value();
          v -= ric({i, a}) * ginv({a, b}) * dfv[static_cast<std::size_t>(b)];
        }
      }
      p1[static_cast<std::size_t>(i)] = v;
    }
    builder.add(IdentityKey::P1, idx, covector_norm(p1, ginv));

    // P2 to P5 from the jet of R
    std::vector<double> dr(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dr[static_cast<std::size_t>(i)] = r.derivative(i).value();
    const double lap_r = geo.laplacian(r).value();
    const RIdentities jet = r_identities(n, s.rho, r0, dr, lap_r, dfv, ric, ginv);

    std::optional<RIdentities> fd;
    if (options.fd_step > 0.0) {
      try {
        const ScalarDerivatives d = scalar_curvature_differences(s.metric, p, options.fd_step);
        const TensorValue gamma = geo.christoffel().value({Slot::Contravariant, Slot::Covariant, Slot::Covariant});
        double lap = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double h = d.hessian[static_cast<std::size_t>(i * n + j)];
            for (int k = 0; k < n; ++k) h -= gamma({k, i, j}) * d.gradient[static_cast<std::size_t>(k)];
            lap += ginv({i, j}) * h;
          }
        }
        fd = r_identities(n, s.rho, r0, d.gradient, lap, dfv, ric, ginv);
      } catch (const Error& e) {
        report.notes.push_back("difference check unavailable at sample " + std::to_string(idx) + ": " + e.what());
      }
    }
    builder.add(IdentityKey::P2, idx, jet.p2, fd ? std::optional(fd->p2) : std::nullopt);
    builder.add(IdentityKey::P3, idx, jet.p3, fd ? std::optional(fd->p3) : std::nullopt);
    builder.add(IdentityKey::P4, idx, jet.p4, fd ? std::optional(fd->p4) : std::nullopt);
    builder.add(IdentityKey::P5, idx, jet.p5, fd ? std::optional(fd->p5) : std::nullopt);
  });

  report.gate_passed = gate;
  if (!gate) {
    std::ostringstream os;
    os << "YS residual exceeds the gate tolerance " << options.gate_tolerance
       << "; P2 to P5 are consequences of YS and need not hold";
    report.notes.push_back(os.str());
  }
  return report;
}

IdentityReport cotton_identities(const MetricField& m, std::span<const std::vector<double>> points,
                                 const CottonOptions& options) {
  if (m.dim() != 3) throw DimensionError("Cotton identities are stated for dimension 3");
  if (options.jet_order < 5) throw OrderError("Cotton identities need metric jets of order >= 5");
  const int n = 3;
  const int order = options.include_ddiv ? std::max(6, options.jet_order) : options.jet_order;
  std::vector<IdentityKey> keys{IdentityKey::DIVB, IdentityKey::M2};
  if (options.include_ddiv) keys.push_back(IdentityKey::DDIV);
  ReportBuilder builder(points, keys, options.tolerances, options.tolerance_scale);
  IdentityReport& report = builder.report();

  for_each_point(points, options.skip_singular, report, [&](std::size_t idx) {
    LocalGeometry geo(m, points[idx], order);
    const JetTensor& c = geo.cotton();
    const JetTensor& ric = geo.ricci();
    const JetTensor& b = geo.bach();
    const TensorValue ginv = geo.inverse_metric().value();
    const JetTensor ric_up = geo.raise_all(ric);
    const double c_norm2 = geo.contract(c, c).value();

    // nabla^i B_ij + C_jab R^ab
    const JetTensor db = geo.covariant_derivative(b);
    std::vector<double> divb(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int i = 0; i < n; ++i) v += ginv({a, i}) * db.at({a, i, j}).value();
        for (int bb = 0; bb < n; ++bb) v += c.at({j, a, bb}).value() * ric_up.at({a, bb}).value();
      }
      divb[static_cast<std::size_t>(j)] = v;
    }
    builder.add(IdentityKey::DIVB, idx, covector_norm(divb, ginv));

    // C_ijk nabla^i R^jk - |C|^2 / 2
    const JetTensor dric = geo.covariant_derivative(ric);
    builder.add(IdentityKey::M2, idx, geo.contract(c, dric).value() - 0.5 * c_norm2);

    if (options.include_ddiv) {
      // nabla^i nabla^j B_ji + B_jk R^jk + |C|^2 / 2
      const JetTensor ddb = geo.covariant_derivative(db);
      double v = geo.contract(b, ric).value() + 0.5 * c_norm2;
      for (int a = 0; a < n; ++a) {
        for (int bb = 0; bb < n; ++bb) {
          for (int cc = 0; cc < n; ++cc) {
            for (int d = 0; d < n; ++d) v += ginv({a, d}) * ginv({bb, cc}) * ddb.at({a, bb, cc, d}).value();
          }
        }
      }
      builder.add(IdentityKey::DDIV, idx, v);
    }
  });
  return report;
}

}  // namespace yamabe
