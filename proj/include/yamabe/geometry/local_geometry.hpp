#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yamabe/geometry/metric_field.hpp"
#include "yamabe/geometry/tensor.hpp"

namespace yamabe {

struct MetricDiagnostics {
  double condition_number = 1.0;
  double min_eigenvalue = 1.0;
  bool positive_definite = true;
};

/// Local Taylor expansion of a metric and its curvature around one point.
///
/// Every tensor field is held as a JetTensor, so covariant derivatives are
/// computed exactly from the expansion instead of by differencing nearby
/// points. With metric jets of order K the fields carry:
///
///   metric, inverse          K
///   Christoffel             K-1
///   Riemann, Ricci, R, S, W K-2
///   Cotton                  K-3
///   Bach                    K-4
///
/// Conventions: Christoffel(k, i, j) = Gamma^k_ij. Riemann(i, j, k, l) is
/// normalised so that R_ijij is the sectional curvature of the (i, j) plane
/// times |e_i ^ e_j|^2, and Ric_ij = g^pq R_ipjq; the round sphere has
/// positive scalar curvature. Derived fields are computed lazily and cached,
/// so an instance must not be shared between threads.
class LocalGeometry {
 public:
  /// Throws SingularMetricError when g(p) is singular or has condition number above
  /// `max_condition`.
  LocalGeometry(const MetricField& field, std::span<const double> point, int order,
                double max_condition = 1e12);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  const BasePoint& base() const noexcept { return base_; }
  const MetricField& field() const noexcept { return field_; }
  const MetricDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  const JetTensor& metric() const { return metric_; }
  const JetTensor& inverse_metric() const { return inverse_; }
  const JetTensor& christoffel() const;
  const JetTensor& riemann() const;
  const JetTensor& ricci() const;
  const Jet& scalar() const;
  const JetTensor& schouten() const;
  const JetTensor& weyl() const;
  /// C_ijk = nabla_i S_jk - nabla_j S_ik.
  const JetTensor& cotton() const;
  /// The same tensor from nabla Ric and nabla R.
  JetTensor cotton_ricci_form() const;
  /// n = 3: B_ij = nabla^k C_kij. n >= 4: the Weyl form
  /// (1/(n-3)) nabla^k nabla^l W_ikjl + (1/(n-2)) R_kl W_i^k_j^l.
  const JetTensor& bach() const;
  /// n >= 4 only: (1/(n-2)) (nabla^k C_kij + R_kl W_i^k_j^l). Throws DimensionError for n = 3.
  JetTensor bach_cotton_form() const;

  /// Jet of a scalar expression over the chart at the expansion order.
  Jet scalar_field(const Expr& f) const;
  /// Covariant derivative of an all-covariant tensor; the new index comes first.
  JetTensor covariant_derivative(const JetTensor& t) const;
  JetTensor gradient(const Jet& f) const;
  /// (nabla nabla f)_ij = d_i d_j f - Gamma^k_ij d_k f.
  JetTensor hessian(const Jet& f) const;
  Jet laplacian(const Jet& f) const;
  /// g^ij a_i b_j for covector fields.
  Jet inner(const JetTensor& a, const JetTensor& b) const;
  /// Full contraction of two all-covariant tensors of equal rank with the inverse metric.
  Jet contract(const JetTensor& a, const JetTensor& b) const;
  /// Raises every index of an all-covariant tensor.
  JetTensor raise_all(const JetTensor& t) const;

 private:
  void require_order(int needed, const char* what) const;
  const Jet& inverse_at(int i, int j) const { return inverse_[static_cast<std::size_t>(i * dim_ + j)]; }
  const Jet& metric_at(int i, int j) const { return metric_[static_cast<std::size_t>(i * dim_ + j)]; }

  MetricField field_;
  int dim_;
  int order_;
  BasePoint base_;
  MetricDiagnostics diagnostics_;
  JetTensor metric_;
  JetTensor inverse_;
  mutable std::optional<JetTensor> christoffel_;
  mutable std::optional<JetTensor> riemann_;
  mutable std::optional<JetTensor> ricci_;
  mutable std::optional<Jet> scalar_;
  mutable std::optional<JetTensor> schouten_;
  mutable std::optional<JetTensor> weyl_;
  mutable std::optional<JetTensor> cotton_;
  mutable std::optional<JetTensor> bach_;
};

}  // namespace yamabe
