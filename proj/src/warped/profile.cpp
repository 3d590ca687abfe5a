#include "yamabe/warped/profile.hpp"

#include <cmath>

#include "yamabe/errors.hpp"

namespace yamabe {

void validate(const WarpedProfilePoint& w) {
  if (w.n < 3) throw DimensionError("warped products need n >= 3");
  if (!std::isfinite(w.r) || !std::isfinite(w.d1) || !std::isfinite(w.d2) || !std::isfinite(w.d3) ||
      !std::isfinite(w.fiber_scalar) || (w.d4 && !std::isfinite(*w.d4))) {
    throw DomainError("non-finite profile data at r = " + std::to_string(w.r));
  }
  if (!(w.d1 > 0.0)) throw DomainError("F' must be positive, got " + std::to_string(w.d1));
}

WarpedProfilePoint profile_from_expression(int n, double fiber_scalar, const Expr& fp, double r,
                                           const std::string& radial,
                                           const std::map<std::string, double>& parameters) {
  const Bindings b{{radial}, parameters};
  const Jet j = eval_jet(fp, b, make_base_point({r}), 3);
  WarpedProfilePoint w{n, fiber_scalar, r, j.value(), j.partial({1}), j.partial({2}), j.partial({3})};
  validate(w);
  return w;
}

}  // namespace yamabe
