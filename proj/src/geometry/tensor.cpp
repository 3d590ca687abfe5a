#include "yamabe/geometry/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

std::size_t power(int n, int r) {
  std::size_t out = 1;
  for (int i = 0; i < r; ++i) out *= static_cast<std::size_t>(n);
  return out;
}

TensorValue move_index(const TensorValue& t, int slot, const TensorValue& m, Slot from, Slot to) {
  if (slot < 0 || slot >= t.rank()) throw PreconditionError("slot out of range");
  if (t.variance()[static_cast<std::size_t>(slot)] != from) {
    throw PreconditionError("slot " + std::to_string(slot) + " has the wrong variance");
  }
  if (m.rank() != 2 || m.dim() != t.dim()) throw MismatchError("metric shape does not match tensor");
  auto variance = t.variance();
  variance[static_cast<std::size_t>(slot)] = to;
  TensorValue out(t.dim(), variance, t.point());
  const int n = t.dim();
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  auto data = out.data();
  for (std::size_t f = 0; f < data.size(); ++f) {
    std::size_t rem = f;
    for (int s = t.rank() - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    const int a = idx[static_cast<std::size_t>(slot)];
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
      idx[static_cast<std::size_t>(slot)] = b;
      sum += m({a, b}) * t.data()[t.flat(idx)];
    }
    data[f] = sum;
  }
  return out;
}

}  // namespace

TensorValue::TensorValue(int dim, std::vector<Slot> variance, std::vector<double> point)
    : dim_(dim), variance_(std::move(variance)), point_(std::move(point)) {
  data_.assign(power(dim_, rank()), 0.0);
}

std::size_t TensorValue::flat(std::span<const int> idx) const {
  if (idx.size() != variance_.size()) throw MismatchError("wrong number of tensor indices");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw PreconditionError("tensor index out of range");
    f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return f;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

TensorValue raise_index(const TensorValue& t, int slot, const TensorValue& inverse_metric) {
  return move_index(t, slot, inverse_metric, Slot::Covariant, Slot::Contravariant);
}

TensorValue lower_index(const TensorValue& t, int slot, const TensorValue& metric) {
  return move_index(t, slot, metric, Slot::Contravariant, Slot::Covariant);
}

double max_abs_difference(const TensorValue& a, const TensorValue& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw MismatchError("tensor shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

JetTensor::JetTensor(int dim, int rank, int order, const BasePoint& base)
    : dim_(dim), rank_(rank), order_(order) {
  components_.assign(power(dim, rank), Jet(order, base));
}

std::size_t JetTensor::flat(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw MismatchError("wrong number of tensor indices");
  std::size_t f = 0;
  for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return f;
}

void JetTensor::unflatten(std::size_t flat, std::span<int> idx) const {
  for (int s = rank_ - 1; s >= 0; --s) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
}

TensorValue JetTensor::value(std::vector<Slot> variance) const {
  if (static_cast<int>(variance.size()) != rank_) throw MismatchError("variance length differs from rank");
  std::vector<double> point;
  if (!components_.empty()) point = *components_.front().base();
  TensorValue out(dim_, std::move(variance), std::move(point));
  for (std::size_t i = 0; i < components_.size(); ++i) out.data()[i] = components_[i].value();
  return out;
}

TensorValue JetTensor::value() const {
  return value(std::vector<Slot>(static_cast<std::size_t>(rank_), Slot::Covariant));
}

JetTensor JetTensor::truncated(int order) const {
  JetTensor out = *this;
  out.order_ = order;
  for (auto& c : out.components_) c = c.truncated(order);
  return out;
}

}  // namespace yamabe
