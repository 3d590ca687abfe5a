#include "yamabe/warped/cross_check.hpp"

#include <algorithm>

#include "yamabe/errors.hpp"
#include "yamabe/geometry/curvature.hpp"
#include "yamabe/warped/charts.hpp"
#include "yamabe/warped/closed_form.hpp"

namespace yamabe {

double CrossCheckReport::worst() const { return std::max({riemann, ricci, scalar, cotton}); }

namespace {

double relative(const TensorValue& closed, const TensorValue& generic) {
  return max_abs_difference(closed, generic) / std::max(1.0, generic.max_abs());
}

}  // namespace

CrossCheckReport cross_check(int n, double fiber_scalar, const Expr& fp, double r_min, double r_max,
                             int resolution, const std::map<std::string, double>& parameters) {
  if (resolution < 1) throw PreconditionError("resolution must be at least 1");
  if (r_max < r_min) throw PreconditionError("empty radial interval");
  const MetricField chart = warped_chart(n, fiber_scalar, fp, parameters);
  const MetricField fiber = fiber_metric(n - 1, fiber_scalar);
  const std::vector<double> u = fiber_base_point(n - 1, fiber_scalar);
  const int m = n - 1;
  TensorValue gbar(m, {Slot::Covariant, Slot::Covariant});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gbar({a, b}) = eval_scalar(fiber.component(a, b), fiber.bindings(), u);

  CrossCheckReport out;
  for (int i = 0; i < resolution; ++i) {
    const double r = resolution == 1 ? r_min : r_min + (r_max - r_min) * i / (resolution - 1.0);
    out.radii.push_back(r);
    const WarpedProfilePoint w = profile_from_expression(n, fiber_scalar, fp, r, "r", parameters);
    std::vector<double> p{r};
    p.insert(p.end(), u.begin(), u.end());
    const CurvaturePack pack = curvature_pack(chart, p, 3, false);
    const WarpedTensors closed = expand(w, gbar);
    out.riemann = std::max(out.riemann, relative(closed.riemann, pack.riemann));
    out.ricci = std::max(out.ricci, relative(closed.ricci, pack.ricci));
    out.scalar = std::max(out.scalar, std::abs(closed.scalar - pack.scalar) / std::max(1.0, std::abs(pack.scalar)));
    if (closed.cotton) out.cotton = std::max(out.cotton, relative(*closed.cotton, pack.cotton));
  }
  return out;
}

}  // namespace yamabe
