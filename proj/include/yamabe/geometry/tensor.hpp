#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "yamabe/expr/jet.hpp"

namespace yamabe {

enum class Slot { Covariant, Contravariant };

/// Dense components of a tensor at one point, row-major over n^rank entries.
class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(int dim, std::vector<Slot> variance, std::vector<double> point = {});

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::vector<Slot>& variance() const noexcept { return variance_; }
  const std::vector<double>& point() const noexcept { return point_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double& operator()(std::initializer_list<int> idx) { return data_[flat(idx)]; }
  double operator()(std::initializer_list<int> idx) const { return data_[flat(idx)]; }

  std::size_t flat(std::span<const int> idx) const;
  std::size_t flat(std::initializer_list<int> idx) const {
    return flat(std::span<const int>(idx.begin(), idx.size()));
  }

  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<Slot> variance_;
  std::vector<double> point_;
  std::vector<double> data_;
};

/// Raises slot `slot` (must be covariant) with the inverse metric.
TensorValue raise_index(const TensorValue& t, int slot, const TensorValue& inverse_metric);
/// Lowers slot `slot` (must be contravariant) with the metric.
TensorValue lower_index(const TensorValue& t, int slot, const TensorValue& metric);

/// max_i |a_i - b_i|; throws MismatchError on shape mismatch.
double max_abs_difference(const TensorValue& a, const TensorValue& b);

/// Tensor whose components are jets at a common base point.
class JetTensor {
 public:
  JetTensor() = default;
  JetTensor(int dim, int rank, int order, const BasePoint& base);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return components_.size(); }

  Jet& operator[](std::size_t flat) { return components_[flat]; }
  const Jet& operator[](std::size_t flat) const { return components_[flat]; }
  Jet& at(std::initializer_list<int> idx) { return components_[flat(idx)]; }
  const Jet& at(std::initializer_list<int> idx) const { return components_[flat(idx)]; }

  std::size_t flat(std::initializer_list<int> idx) const;

  /// Unpacks a flat position into per-slot indices.
  void unflatten(std::size_t flat, std::span<int> idx) const;

  /// Component values (degree-0 coefficients).
  TensorValue value(std::vector<Slot> variance) const;
  /// All-covariant value.
  TensorValue value() const;

  JetTensor truncated(int order) const;

 private:
  int dim_ = 0;
  int rank_ = 0;
  int order_ = 0;
  std::vector<Jet> components_;
};

}  // namespace yamabe
