#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A jet of dimension d and order K at base point p stores, for every
// multi-index alpha with |alpha| <= K, the scaled partial derivative
// d^alpha f(p) / alpha!. Arithmetic is the truncated Taylor ring, so every
// coefficient is exact up to floating point rounding.
//
// Multi-indices are stored in graded order (by total degree, then by a
// fixed order inside each degree that does not depend on K). The
// coefficients of degree <= m are therefore a prefix of any jet of order
// >= m, which makes truncation a resize.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace yamabe {

using BasePoint = std::shared_ptr<const std::vector<double>>;

BasePoint make_base_point(std::vector<double> coordinates);

class JetLayout {
 public:
  static constexpr int kMaxDim = 15;
  static constexpr int kMaxOrder = 12;

  struct Term {
    std::uint32_t lhs;
    std::uint32_t rhs;
  };

  /// Shared, immutable layout for (dim, order). Thread-safe.
  static std::shared_ptr<const JetLayout> get(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return degrees_.size(); }

  std::span<const int> multi_index(std::size_t k) const {
    return {indices_.data() + k * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  int degree(std::size_t k) const { return degrees_[k]; }
  /// alpha! for entry k.
  double factorial(std::size_t k) const { return factorials_[k]; }

  /// Position of alpha; throws OrderError if |alpha| > order, MismatchError on wrong length.
  std::size_t position(std::span<const int> alpha) const;

  /// Number of multi-indices with degree <= m (m <= order).
  std::size_t prefix_size(int m) const { return prefix_[static_cast<std::size_t>(m)]; }

  /// Pairs (lhs, rhs) whose multi-indices sum to entry `out`.
  std::span<const Term> products_into(std::size_t out) const {
    return {terms_.data() + term_offsets_[out], term_offsets_[out + 1] - term_offsets_[out]};
  }

  /// Position of (alpha_k + e_var); only valid when degree(k) < order.
  std::size_t raised(std::size_t k, int var) const {
    return raised_[k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(var)];
  }

 private:
  JetLayout(int dim, int order);

  int dim_;
  int order_;
  std::vector<int> indices_;
  std::vector<int> degrees_;
  std::vector<double> factorials_;
  std::vector<std::size_t> prefix_;
  std::vector<Term> terms_;
  std::vector<std::size_t> term_offsets_;
  std::vector<std::size_t> raised_;
  std::vector<std::pair<std::uint64_t, std::size_t>> lookup_;  // sorted by key
};

class Jet {
 public:
  Jet() = default;
  /// Zero jet.
  Jet(int order, BasePoint base);

  static Jet constant(int order, BasePoint base, double value);
  /// The coordinate function x_var expanded at `base`.
  static Jet variable(int order, BasePoint base, int var);

  bool empty() const noexcept { return layout_ == nullptr; }
  int dim() const noexcept { return layout_->dim(); }
  int order() const noexcept { return layout_->order(); }
  const BasePoint& base() const noexcept { return base_; }
  const JetLayout& layout() const noexcept { return *layout_; }

  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }

  double value() const { return coeffs_[0]; }
  /// d^alpha f / alpha!
  double coefficient(std::span<const int> alpha) const;
  double coefficient(std::initializer_list<int> alpha) const {
    return coefficient(std::span<const int>(alpha.begin(), alpha.size()));
  }
  /// The raw partial derivative d^alpha f.
  double partial(std::span<const int> alpha) const;
  double partial(std::initializer_list<int> alpha) const {
    return partial(std::span<const int>(alpha.begin(), alpha.size()));
  }

  /// True when all coefficients of positive degree vanish.
  bool is_constant() const;

  /// Restriction to degree <= m (m <= order).
  Jet truncated(int m) const;
  /// d/dx_var as a jet of order - 1. Throws OrderError on an order-0 jet.
  Jet derivative(int var) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double s);
  Jet& operator+=(double s);

 private:
  std::shared_ptr<const JetLayout> layout_;
  BasePoint base_;
  std::vector<double> coeffs_;
};

/// Throws MismatchError unless a and b share dimension, order, and base point.
void require_compatible(const Jet& a, const Jet& b);

Jet operator-(Jet a);
Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
/// Throws DomainError when b has zero constant term.
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

/// Adds a * b into acc with truncation to acc's order (a and b may carry higher order).
void fma_into(Jet& acc, const Jet& a, const Jet& b, double scale = 1.0);

enum class Elementary { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

const char* to_string(Elementary f);

/// Composition f(a) through the univariate Taylor series of f at a's constant term.
Jet apply(Elementary f, const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);

/// Integer power by repeated squaring; negative exponents go through division.
Jet pow(const Jet& a, int exponent);
/// Integer-valued constant exponents use pow(a, int); otherwise exp(b log a), which needs a > 0.
Jet pow(const Jet& a, const Jet& b);

/// Plain-double evaluation of an elementary function with the same domain rules.
double apply(Elementary f, double x);

}  // namespace yamabe
