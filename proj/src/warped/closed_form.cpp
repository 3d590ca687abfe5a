#include "yamabe/warped/closed_form.hpp"

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

double fiber_curvature(const WarpedProfilePoint& w) {
  const double m = w.n - 1.0;
  return w.fiber_scalar / (m * (m - 1.0));
}

}  // namespace

WarpedCurvature closed_form_curvature(const WarpedProfilePoint& w) {
  validate(w);
  const double n = w.n;
  const double k = fiber_curvature(w);
  WarpedCurvature c;
  c.radial_mixed = -w.d1 * w.d3;
  c.fiber_block = w.d1 * w.d1 * (k - w.d2 * w.d2);
  c.ricci_radial = -(n - 1.0) * w.d3 / w.d1;
  c.ricci_fiber = w.fiber_scalar / (n - 1.0) - (n - 2.0) * w.d2 * w.d2 - w.d1 * w.d3;
  const double q = w.d2 / w.d1;
  c.scalar = w.fiber_scalar / (w.d1 * w.d1) - (n - 1.0) * (n - 2.0) * q * q - 2.0 * (n - 1.0) * w.d3 / w.d1;
  return c;
}

WarpedTensors expand(const WarpedProfilePoint& w, const TensorValue& gbar) {
  const WarpedCurvature c = closed_form_curvature(w);
  const int n = w.n;
  const int m = n - 1;
  if (gbar.dim() != m || gbar.rank() != 2) throw MismatchError("fiber metric has the wrong shape");
  const std::vector<Slot> two(2, Slot::Covariant);
  const std::vector<Slot> four(4, Slot::Covariant);
  WarpedTensors out{TensorValue(n, two), TensorValue(n, four), TensorValue(n, two), c.scalar, std::nullopt};
  auto gb = [&](int a, int b) { return gbar({a - 1, b - 1}); };
  out.metric({0, 0}) = 1.0;
  out.ricci({0, 0}) = c.ricci_radial;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      out.metric({a, b}) = w.d1 * w.d1 * gb(a, b);
      out.ricci({a, b}) = c.ricci_fiber * gb(a, b);
      const double mixed = c.radial_mixed * gb(a, b);
      out.riemann({0, a, 0, b}) = mixed;
      out.riemann({a, 0, b, 0}) = mixed;
      out.riemann({0, a, b, 0}) = -mixed;
      out.riemann({a, 0, 0, b}) = -mixed;
      for (int cc = 1; cc < n; ++cc) {
        for (int d = 1; d < n; ++d) {
          out.riemann({a, b, cc, d}) = c.fiber_block * (gb(a, cc) * gb(b, d) - gb(a, d) * gb(b, cc));
        }
      }
    }
  }
  if (w.d4) {
    const double x = radial_cotton_coefficient(w);
    TensorValue cot(n, std::vector<Slot>(3, Slot::Covariant));
    for (int a = 1; a < n; ++a) {
      for (int b = 1; b < n; ++b) {
        cot({0, a, b}) = x * gb(a, b);
        cot({a, 0, b}) = -x * gb(a, b);
      }
    }
    out.cotton = std::move(cot);
  }
  return out;
}

double radial_cotton_coefficient(const WarpedProfilePoint& w) {
  if (!w.d4) throw PreconditionError("the radial Cotton component needs F''''");
  const WarpedCurvature c = closed_form_curvature(w);
  const double n = w.n;
  const double d1 = w.d1, d2 = w.d2, d3 = w.d3, d4 = *w.d4;
  const double dscalar = -2.0 * w.fiber_scalar * d2 / (d1 * d1 * d1) -
                         2.0 * (n - 1.0) * (n - 2.0) * (d2 / d1) * (d3 / d1 - d2 * d2 / (d1 * d1)) -
                         2.0 * (n - 1.0) * (d4 / d1 - d3 * d2 / (d1 * d1));
  const double dricci_fiber = -(2.0 * (n - 2.0) + 1.0) * d2 * d3 - d1 * d4;
  const double h = 1.0 / (2.0 * (n - 1.0));
  // Schouten: S_ab = sigma gbar_ab, S_11 = s11
  const double sigma = c.ricci_fiber - h * c.scalar * d1 * d1;
  const double dsigma = dricci_fiber - h * (dscalar * d1 * d1 + 2.0 * c.scalar * d1 * d2);
  const double s11 = c.ricci_radial - h * c.scalar;
  return dsigma - (d2 / d1) * sigma - d1 * d2 * s11;
}

RadialCotton radial_cotton_c(const WarpedProfilePoint& w) {
  if (w.n != 3) throw DimensionError("the conserved quantity c is defined for n = 3");
  const WarpedCurvature cf = closed_form_curvature(w);
  RadialCotton out;
  out.c = 0.25 * cf.scalar * w.d1 * w.d1 + w.d1 * w.d3;
  if (w.d4) {
    const double d1 = w.d1, d2 = w.d2, d3 = w.d3, d4 = *w.d4;
    const double dscalar = -2.0 * w.fiber_scalar * d2 / (d1 * d1 * d1) - 4.0 * (d2 / d1) * (d3 / d1 - d2 * d2 / (d1 * d1)) -
                           4.0 * (d4 / d1 - d3 * d2 / (d1 * d1));
    out.dc_dr = 0.25 * dscalar * d1 * d1 + 0.5 * cf.scalar * d1 * d2 + d2 * d3 + d1 * d4;
    out.cotton_component = radial_cotton_coefficient(w);
  }
  return out;
}

double radial_laplacian_R(const WarpedProfilePoint& w, double dR, double d2R) {
  validate(w);
  return d2R + (w.n - 1.0) * (w.d2 / w.d1) * dR;
}

double ric_radial(const WarpedProfilePoint& w) {
  validate(w);
  return -(w.n - 1.0) * w.d1 * w.d3;
}

}  // namespace yamabe
