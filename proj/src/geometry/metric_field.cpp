#include "yamabe/geometry/metric_field.hpp"

#include <cmath>

#include "yamabe/errors.hpp"
#include "yamabe/expr/parser.hpp"

namespace yamabe {

std::vector<std::string> MetricField::declared_symbols() const {
  std::vector<std::string> names = coordinates;
  for (const auto& [name, value] : parameters) names.push_back(name);
  return names;
}

MetricField make_metric_field(std::vector<std::string> coordinates,
                              std::map<std::string, double> parameters,
                              const std::vector<std::vector<std::string>>& rows,
                              const std::optional<std::string>& potential) {
  MetricField m;
  m.coordinates = std::move(coordinates);
  m.parameters = std::move(parameters);
  const auto n = m.coordinates.size();
  if (rows.size() != n) throw PreconditionError("metric needs " + std::to_string(n) + " rows");
  const auto declared = m.declared_symbols();
  for (const auto& row : rows) {
    if (row.size() != n) throw PreconditionError("metric row needs " + std::to_string(n) + " entries");
    for (const auto& src : row) m.components.push_back(parse(src, declared));
  }
  if (potential) m.potential = parse(*potential, declared);
  return m;
}

MetricField diagonal_metric(std::vector<std::string> coordinates, std::vector<Expr> diagonal,
                            std::map<std::string, double> parameters) {
  MetricField m;
  m.coordinates = std::move(coordinates);
  m.parameters = std::move(parameters);
  const auto n = m.coordinates.size();
  if (diagonal.size() != n) throw PreconditionError("diagonal length differs from dimension");
  m.components.assign(n * n, Expr::number(0.0));
  for (std::size_t i = 0; i < n; ++i) m.components[i * n + i] = diagonal[i];
  return m;
}

std::optional<std::pair<int, int>> find_asymmetry(const MetricField& m,
                                                  std::span<const std::vector<double>> samples,
                                                  double tol) {
  const int n = m.dim();
  const auto bindings = m.bindings();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Expr& a = m.component(i, j);
      const Expr& b = m.component(j, i);
      if (structurally_equal(a, b)) continue;
      for (const auto& p : samples) {
        std::optional<double> va;
        std::optional<double> vb;
        try {
          va = eval_scalar(a, bindings, p);
        } catch (const DomainError&) {
        }
        try {
          vb = eval_scalar(b, bindings, p);
        } catch (const DomainError&) {
        }
        if (va.has_value() != vb.has_value()) return std::make_pair(i, j);
        if (va && std::abs(*va - *vb) > tol * std::max(1.0, std::abs(*va))) return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

}  // namespace yamabe
