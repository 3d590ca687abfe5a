#include "yamabe/warped/charts.hpp"

#include <cmath>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

std::vector<std::string> fiber_coordinates(int dim) {
  std::vector<std::string> c;
  for (int i = 1; i <= dim; ++i) c.push_back("u" + std::to_string(i));
  return c;
}

/// Diagonal of the model metric.
std::vector<Expr> fiber_diagonal(int dim, double fiber_scalar) {
  if (dim < 2) throw DimensionError("fiber dimension must be at least 2");
  const double k = fiber_scalar / (dim * (dim - 1.0));
  const auto coords = fiber_coordinates(dim);
  std::vector<Expr> diag;
  if (k > 0.0) {
    Expr running = Expr::number(1.0 / k);
    for (int i = 0; i < dim; ++i) {
      diag.push_back(running);
      running = running * pow(Expr::call(Elementary::Sin, Expr::symbol(coords[static_cast<std::size_t>(i)])), 2.0);
    }
  } else if (k < 0.0) {
    const Expr e = Expr::number(-1.0 / k) / pow(Expr::symbol(coords.back()), 2.0);
    diag.assign(static_cast<std::size_t>(dim), e);
  } else {
    diag.assign(static_cast<std::size_t>(dim), Expr::number(1.0));
  }
  return diag;
}

}  // namespace

MetricField fiber_metric(int dim, double fiber_scalar) {
  return diagonal_metric(fiber_coordinates(dim), fiber_diagonal(dim, fiber_scalar));
}

std::vector<double> fiber_base_point(int dim, double fiber_scalar) {
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (fiber_scalar > 0.0) {
      p[static_cast<std::size_t>(i)] = i + 1 < dim ? 1.1 : 0.4;
    } else if (fiber_scalar < 0.0) {
      p[static_cast<std::size_t>(i)] = i + 1 < dim ? 0.3 : 1.2;
    } else {
      p[static_cast<std::size_t>(i)] = 0.2;
    }
  }
  return p;
}

MetricField warped_chart(int n, double fiber_scalar, const Expr& fp,
                         const std::map<std::string, double>& parameters) {
  if (n < 3) throw DimensionError("warped products need n >= 3");
  std::vector<std::string> coords{"r"};
  for (const auto& c : fiber_coordinates(n - 1)) coords.push_back(c);
  const auto fiber = fiber_diagonal(n - 1, fiber_scalar);
  std::vector<Expr> diag{Expr::number(1.0)};
  const Expr w = pow(fp, 2.0);
  for (const auto& f : fiber) diag.push_back(w * f);
  return diagonal_metric(coords, diag, parameters);
}

}  // namespace yamabe
