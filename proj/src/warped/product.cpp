#include "yamabe/warped/product.hpp"

#include <numbers>

#include "yamabe/errors.hpp"
#include "yamabe/warped/charts.hpp"

namespace yamabe {

ProductSoliton build_product_soliton(SolitonKind kind, double a, double rho) {
  if (!(a > 0.0)) throw PreconditionError("product soliton needs a > 0");
  if (kind == SolitonKind::Steady) throw PreconditionError("no steady product soliton of this form");
  if (kind_of(rho) != kind) {
    throw PreconditionError("rho = " + std::to_string(rho) + " does not match kind " + to_string(kind));
  }
  const double fiber_scalar = rho * a * a;
  MetricField metric = warped_chart(3, fiber_scalar, Expr::number(a));
  const Expr potential = a * Expr::symbol("r");
  ChartBox box;
  if (kind == SolitonKind::Shrinking) {
    box = {{-1.0, 0.3, 0.0}, {1.0, std::numbers::pi - 0.3, 2.0 * std::numbers::pi}};
  } else {
    box = {{-1.0, -1.0, 0.5}, {1.0, 1.0, 2.0}};
  }
  return {make_soliton_spec(std::move(metric), potential, rho, std::move(box), kind), a, fiber_scalar,
          0.5 * rho};
}

}  // namespace yamabe
