#include "yamabe/ode/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

using Vec = std::array<double, 3>;

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [w, k] : terms)
    for (std::size_t i = 0; i < 3; ++i) out[i] += h * w * (*k)[i];
  return out;
}

bool finite(const Vec& y) { return std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]); }

double magnitude(const Vec& y) { return std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])}); }

SampleDiagnostics diagnose(const ProfileParams& p, const IntegratorOptions& o, const ODEState& s) {
  SampleDiagnostics d;
  const double m = p.n - 1.0;
  d.scalar = scalar_from_state(p, s);
  d.scalar_from_rho = p.rho + s.dphi;
  d.ric_radial = -m * s.phi * s.ddphi;
  if (p.n == 3) {
    d.c = 0.25 * d.scalar * s.phi * s.phi + s.phi * s.ddphi;
    d.key3_residual = std::abs(0.25 * d.scalar * s.phi * s.phi - *d.c);
  }
  const double h = std::min(o.stencil_step, s.phi / 8.0);
  if (h > 0.0) {
    try {
      // R = rho + phi' along the solution
      auto R = [&](double dr) { return p.rho + transport(p, s, dr).dphi; };
      const double r0 = p.rho + s.dphi;
      const double d2 = (-R(-2 * h) + 16 * R(-h) - 30 * r0 + 16 * R(h) - R(2 * h)) / (12 * h * h);
      const double d1 = s.ddphi;
      d.rpp_residual = d2 + m * (s.dphi / s.phi) * d1 + s.phi * d1 / (2.0 * m) + d.scalar * (d.scalar - p.rho) / m;
    } catch (const DomainError&) {
      d.rpp_residual.reset();
    }
  }
  return d;
}

void record(ProfileTrajectory& t, const ODEState& s) {
  t.samples.push_back(s);
  t.diagnostics.push_back(diagnose(t.params, t.options, s));
}

}  // namespace

void validate(const IntegratorOptions& o) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(o.rel_tol) || !positive(o.abs_tol)) throw PreconditionError("tolerances must be positive and finite");
  if (!positive(o.max_step) || o.initial_step < 0.0 || !std::isfinite(o.initial_step)) {
    throw PreconditionError("invalid step bounds");
  }
  if (!positive(o.phi_floor) || !positive(o.blowup) || !positive(o.stencil_step)) {
    throw PreconditionError("invalid integrator limits");
  }
  if (o.max_steps == 0) throw PreconditionError("max_steps must be positive");
}

const char* to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::Singularity: return "singularity";
    case IntegrationStatus::BlowUp: return "blow_up";
    case IntegrationStatus::StepUnderflow: return "step_underflow";
    case IntegrationStatus::MaxSteps: return "max_steps";
  }
  return "unknown";
}

ODEState transport(const ProfileParams& p, const ODEState& s, double dr, int substeps) {
  if (substeps < 1) throw PreconditionError("substeps must be positive");
  Vec y{s.F, s.phi, s.dphi};
  const double h = dr / substeps;
  for (int i = 0; i < substeps; ++i) {
    const Vec k1 = profile_system(p, y);
    const Vec k2 = profile_system(p, axpy(y, h, {{0.5, &k1}}));
    const Vec k3 = profile_system(p, axpy(y, h, {{0.5, &k2}}));
    const Vec k4 = profile_system(p, axpy(y, h, {{1.0, &k3}}));
    y = axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
  }
  return make_state(p, s.r + dr, y[0], y[1], y[2]);
}

ProfileTrajectory integrate(const ProfileParams& p, const ODEState& ic, double r_end, const IntegratorOptions& opts) {
  validate(p);
  validate(opts);
  if (!(ic.phi > 0.0) || !std::isfinite(ic.phi) || !std::isfinite(ic.dphi) || !std::isfinite(ic.F)) {
    throw PreconditionError("initial phi must be positive and the state finite");
  }
  if (!(r_end > ic.r)) throw PreconditionError("r_end must exceed the initial radius");

  ProfileTrajectory t;
  t.params = p;
  t.options = opts;
  ODEState s = make_state(p, ic.r, ic.F, ic.phi, ic.dphi);
  record(t, s);

  Vec y{s.F, s.phi, s.dphi};
  double r = s.r;
  Vec k1 = profile_system(p, y);
  ++t.evaluations;

  auto scale = [&](const Vec& a, const Vec& b, std::size_t i) {
    return opts.abs_tol + opts.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h = opts.initial_step;
  if (h == 0.0) {
    // Starting step from the size of the derivative relative to the tolerance scale.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double sc = scale(y, y, i);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, 0.01 * std::pow(opts.rel_tol, 0.2));
  }
  h = std::min({h, opts.max_step, r_end - r});
  const double min_step = 1e-13 * std::max(1.0, std::abs(r_end));

  while (r < r_end) {
    if (t.steps >= opts.max_steps) {
      t.status = IntegrationStatus::MaxSteps;
      t.message = "step budget exhausted at r = " + std::to_string(r);
      return t;
    }
    if (h < min_step) {
      if (y[1] < 1e-4) {
        t.status = IntegrationStatus::Singularity;
        t.message = "phi -> 0+ near r = " + std::to_string(r);
      } else {
        t.status = IntegrationStatus::StepUnderflow;
        t.message = "step size underflow at r = " + std::to_string(r);
      }
      return t;
    }
    const bool last = r + h >= r_end;
    if (last) h = r_end - r;

    Vec ynew, err{};
    Vec k7{};
    bool ok = true;
    try {
      const Vec k2 = profile_system(p, axpy(y, h, {{a21, &k1}}));
      const Vec k3 = profile_system(p, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
      const Vec k4 = profile_system(p, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const Vec k5 = profile_system(p, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const Vec k6 = profile_system(p, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      ynew = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      k7 = profile_system(p, ynew);
      t.evaluations += 6;
      for (std::size_t i = 0; i < 3; ++i) {
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      }
      ok = finite(ynew) && finite(k7);
    } catch (const DomainError&) {
      ok = false;
    }

    double ratio = 0.0;
    if (ok) {
      for (std::size_t i = 0; i < 3; ++i) ratio = std::max(ratio, std::abs(err[i]) / scale(y, ynew, i));
    }
    if (!ok || !(ratio <= 1.0)) {
      ++t.rejected;
      h *= ok ? std::max(0.2, 0.9 * std::pow(ratio, -0.2)) : 0.25;
      continue;
    }

    r = last ? r_end : r + h;
    y = ynew;
    k1 = k7;
    ++t.steps;
    const ODEState ns{r, y[0], y[1], y[2], k7[2]};
    if (y[1] < opts.phi_floor) {
      t.status = IntegrationStatus::Singularity;
      t.message = "phi fell below the floor at r = " + std::to_string(r);
      record(t, ns);
      return t;
    }
    if (magnitude(y) > opts.blowup || std::abs(ns.ddphi) > opts.blowup) {
      if (y[1] < 1e-4) {
        t.status = IntegrationStatus::Singularity;
        t.message = "phi -> 0+ with diverging F''' at r = " + std::to_string(r);
        return t;
      }
      t.status = IntegrationStatus::BlowUp;
      t.message = "state magnitude exceeded the blow-up bound at r = " + std::to_string(r);
      return t;
    }
    record(t, ns);
    const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
    h = std::min(h * grow, opts.max_step);
  }
  t.status = IntegrationStatus::Completed;
  return t;
}

ProfileTrajectory integrate_from_origin(const ProfileParams& p, double eps, double r_end,
                                        const IntegratorOptions& opts) {
  ProfileTrajectory t = integrate(p, origin_series_start(p, eps), r_end, opts);
  t.from_origin = true;
  t.origin_eps = eps;
  return t;
}

ODEState dense_state(const ProfileTrajectory& t, double r) {
  const auto& s = t.samples;
  if (s.empty() || r < s.front().r || r > s.back().r) throw PreconditionError("r outside the sampled range");
  auto it = std::upper_bound(s.begin(), s.end(), r, [](double v, const ODEState& x) { return v < x.r; });
  if (it == s.end()) return s.back();
  if (it == s.begin()) return s.front();
  const ODEState& a = *(it - 1);
  const ODEState& b = *it;
  const double h = b.r - a.r;
  const double u = (r - a.r) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  auto herm = [&](double ya, double da, double yb, double db) {
    return h00 * ya + h10 * h * da + h01 * yb + h11 * h * db;
  };
  const double F = herm(a.F, a.phi, b.F, b.phi);
  const double phi = herm(a.phi, a.dphi, b.phi, b.dphi);
  const double dphi = herm(a.dphi, a.ddphi, b.dphi, b.ddphi);
  return make_state(t.params, r, F, phi, dphi);
}

}  // namespace yamabe
