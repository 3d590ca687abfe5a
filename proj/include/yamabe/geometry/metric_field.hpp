#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yamabe/expr/expr.hpp"

namespace yamabe {

/// A Riemannian metric on a coordinate chart, given by analytic component expressions.
struct MetricField {
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
  /// Row-major n x n component expressions g_ij.
  std::vector<Expr> components;
  /// Optional potential function F.
  std::optional<Expr> potential;

  int dim() const noexcept { return static_cast<int>(coordinates.size()); }
  const Expr& component(int i, int j) const {
    return components[static_cast<std::size_t>(i * dim() + j)];
  }
  Bindings bindings() const { return {coordinates, parameters}; }
  /// Coordinates followed by parameter names: the symbols an expression may use.
  std::vector<std::string> declared_symbols() const;
};

/// Parses component sources (rows of strings) against the declared coordinates and parameters.
/// Throws ParseError, or PreconditionError when the matrix is not n x n.
MetricField make_metric_field(std::vector<std::string> coordinates,
                              std::map<std::string, double> parameters,
                              const std::vector<std::vector<std::string>>& rows,
                              const std::optional<std::string>& potential = std::nullopt);

/// Diagonal metric from component expressions.
MetricField diagonal_metric(std::vector<std::string> coordinates, std::vector<Expr> diagonal,
                            std::map<std::string, double> parameters = {});

/// First (i, j), i < j, for which g_ij and g_ji are neither the same tree nor equal
/// within `tol` at every sample point. Points where either side fails to evaluate count
/// as a mismatch only if exactly one side fails.
std::optional<std::pair<int, int>> find_asymmetry(const MetricField& m,
                                                  std::span<const std::vector<double>> samples,
                                                  double tol = 1e-12);

}  // namespace yamabe
