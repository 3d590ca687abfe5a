#include "yamabe/expr/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

std::uint64_t encode(std::span<const int> alpha) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    key |= static_cast<std::uint64_t>(alpha[i]) << (4 * i);
  }
  return key;
}

// All compositions of `degree` into `dim` parts, first component descending.
void compositions(int dim, int degree, std::vector<int>& prefix, std::vector<int>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    out.insert(out.end(), prefix.begin(), prefix.end());
    out.push_back(degree);
    return;
  }
  for (int a = degree; a >= 0; --a) {
    prefix.push_back(a);
    compositions(dim, degree - a, prefix, out);
    prefix.pop_back();
  }
}

bool same_base(const BasePoint& a, const BasePoint& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// Univariate Taylor series f(x0 + t) = sum_k t_k t^k, k = 0..order.
std::vector<double> series_of(Elementary f, double x0, int order) {
  const auto n = static_cast<std::size_t>(order) + 1;
  std::vector<double> t(n, 0.0);
  auto inv_factorial = [](std::size_t k) {
    double v = 1.0;
    for (std::size_t i = 2; i <= k; ++i) v /= static_cast<double>(i);
    return v;
  };
  auto divide = [n](const std::vector<double>& num, const std::vector<double>& den) {
    std::vector<double> q(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      double acc = num[k];
      for (std::size_t j = 0; j < k; ++j) acc -= q[j] * den[k - j];
      q[k] = acc / den[0];
    }
    return q;
  };
  switch (f) {
    case Elementary::Exp: {
      const double e = std::exp(x0);
      for (std::size_t k = 0; k < n; ++k) t[k] = e * inv_factorial(k);
      break;
    }
    case Elementary::Log: {
      t[0] = std::log(x0);
      double p = 1.0;
      for (std::size_t k = 1; k < n; ++k) {
        p /= x0;
        t[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / static_cast<double>(k);
      }
      break;
    }
    case Elementary::Sqrt: {
      const double p = 0.5;
      double binom = 1.0;
      t[0] = std::sqrt(x0);
      for (std::size_t k = 1; k < n; ++k) {
        binom *= (p - static_cast<double>(k) + 1.0) / static_cast<double>(k);
        t[k] = t[0] * binom * std::pow(x0, -static_cast<double>(k));
      }
      break;
    }
    case Elementary::Sin:
    case Elementary::Cos: {
      const double s = std::sin(x0);
      const double c = std::cos(x0);
      // d^k sin = sin(x + k pi/2)
      const double cycle_sin[4] = {s, c, -s, -c};
      const double cycle_cos[4] = {c, -s, -c, s};
      const double* cycle = f == Elementary::Sin ? cycle_sin : cycle_cos;
      for (std::size_t k = 0; k < n; ++k) t[k] = cycle[k % 4] * inv_factorial(k);
      break;
    }
    case Elementary::Sinh:
    case Elementary::Cosh: {
      const double sh = std::sinh(x0);
      const double ch = std::cosh(x0);
      const double even = f == Elementary::Sinh ? sh : ch;
      const double odd = f == Elementary::Sinh ? ch : sh;
      for (std::size_t k = 0; k < n; ++k) t[k] = (k % 2 == 0 ? even : odd) * inv_factorial(k);
      break;
    }
    case Elementary::Tan:
      t = divide(series_of(Elementary::Sin, x0, order), series_of(Elementary::Cos, x0, order));
      break;
    case Elementary::Tanh:
      t = divide(series_of(Elementary::Sinh, x0, order), series_of(Elementary::Cosh, x0, order));
      break;
  }
  return t;
}

void check_domain(Elementary f, double x0, int order) {
  switch (f) {
    case Elementary::Log:
      if (!(x0 > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x0));
      break;
    case Elementary::Sqrt:
      if (order > 0 ? !(x0 > 0.0) : !(x0 >= 0.0)) {
        throw DomainError("sqrt of " + std::string(order > 0 ? "non-positive" : "negative") +
                          " value " + std::to_string(x0));
      }
      break;
    case Elementary::Tan:
      if (std::cos(x0) == 0.0) throw DomainError("tan at a pole");
      break;
    default:
      break;
  }
  if (!std::isfinite(x0)) throw DomainError("non-finite argument to " + std::string(to_string(f)));
}

}  // namespace

BasePoint make_base_point(std::vector<double> coordinates) {
  return std::make_shared<const std::vector<double>>(std::move(coordinates));
}

JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  const auto d = static_cast<std::size_t>(dim);
  std::vector<int> prefix;
  for (int m = 0; m <= order; ++m) {
    compositions(dim, m, prefix, indices_);
    prefix_.push_back(indices_.size() / d);
  }
  const std::size_t count = indices_.size() / d;
  degrees_.resize(count);
  factorials_.resize(count);
  lookup_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto alpha = multi_index(k);
    int deg = 0;
    double fact = 1.0;
    for (int a : alpha) {
      deg += a;
      for (int i = 2; i <= a; ++i) fact *= i;
    }
    degrees_[k] = deg;
    factorials_[k] = fact;
    lookup_.emplace_back(encode(alpha), k);
  }
  std::sort(lookup_.begin(), lookup_.end());

  term_offsets_.reserve(count + 1);
  term_offsets_.push_back(0);
  std::vector<int> rest(d);
  for (std::size_t out = 0; out < count; ++out) {
    auto target = multi_index(out);
    for (std::size_t lhs = 0; lhs < prefix_[static_cast<std::size_t>(degrees_[out])]; ++lhs) {
      auto a = multi_index(lhs);
      bool fits = true;
      for (std::size_t i = 0; i < d; ++i) {
        rest[i] = target[i] - a[i];
        if (rest[i] < 0) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      terms_.push_back({static_cast<std::uint32_t>(lhs), static_cast<std::uint32_t>(position(rest))});
    }
    term_offsets_.push_back(terms_.size());
  }

  raised_.assign(count * d, std::numeric_limits<std::size_t>::max());
  std::vector<int> up(d);
  for (std::size_t k = 0; k < count; ++k) {
    if (degrees_[k] >= order) continue;
    auto alpha = multi_index(k);
    for (std::size_t v = 0; v < d; ++v) {
      std::copy(alpha.begin(), alpha.end(), up.begin());
      ++up[v];
      raised_[k * d + v] = position(up);
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
  if (dim < 1 || dim > kMaxDim) {
    throw PreconditionError("jet dimension " + std::to_string(dim) + " outside [1, " +
                            std::to_string(kMaxDim) + "]");
  }
  if (order < 0 || order > kMaxOrder) {
    throw OrderError("jet order " + std::to_string(order) + " outside [0, " +
                     std::to_string(kMaxOrder) + "]");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dim, order}];
  if (!slot) slot = std::shared_ptr<const JetLayout>(new JetLayout(dim, order));
  return slot;
}

std::size_t JetLayout::position(std::span<const int> alpha) const {
  if (alpha.size() != static_cast<std::size_t>(dim_)) {
    throw MismatchError("multi-index has " + std::to_string(alpha.size()) +
                        " entries, jet dimension is " + std::to_string(dim_));
  }
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) throw PreconditionError("negative multi-index entry");
    deg += a;
  }
  if (deg > order_) {
    throw OrderError("derivative of total order " + std::to_string(deg) +
                     " requested from a jet of order " + std::to_string(order_));
  }
  const auto key = encode(alpha);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, std::size_t{0}));
  return it->second;
}

Jet::Jet(int order, BasePoint base) : base_(std::move(base)) {
  if (!base_) throw PreconditionError("jet requires a base point");
  layout_ = JetLayout::get(static_cast<int>(base_->size()), order);
  coeffs_.assign(layout_->size(), 0.0);
}

Jet Jet::constant(int order, BasePoint base, double value) {
  Jet j(order, std::move(base));
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int order, BasePoint base, int var) {
  Jet j(order, std::move(base));
  if (var < 0 || var >= j.dim()) throw PreconditionError("variable index out of range");
  j.coeffs_[0] = (*j.base_)[static_cast<std::size_t>(var)];
  if (order > 0) j.coeffs_[1 + static_cast<std::size_t>(var)] = 1.0;
  return j;
}

double Jet::coefficient(std::span<const int> alpha) const { return coeffs_[layout_->position(alpha)]; }

double Jet::partial(std::span<const int> alpha) const {
  const auto k = layout_->position(alpha);
  return coeffs_[k] * layout_->factorial(k);
}

bool Jet::is_constant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double c) { return c == 0.0; });
}

Jet Jet::truncated(int m) const {
  if (m > order()) {
    throw OrderError("cannot raise jet order from " + std::to_string(order()) + " to " +
                     std::to_string(m));
  }
  Jet out;
  out.layout_ = JetLayout::get(dim(), m);
  out.base_ = base_;
  out.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(out.layout_->size()));
  return out;
}

Jet Jet::derivative(int var) const {
  if (order() == 0) throw OrderError("derivative of an order-0 jet");
  if (var < 0 || var >= dim()) throw PreconditionError("variable index out of range");
  Jet out;
  out.layout_ = JetLayout::get(dim(), order() - 1);
  out.base_ = base_;
  out.coeffs_.resize(out.layout_->size());
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) {
    const double weight = layout_->multi_index(k)[static_cast<std::size_t>(var)] + 1;
    out.coeffs_[k] = weight * coeffs_[layout_->raised(k, var)];
  }
  return out;
}

Jet& Jet::operator+=(const Jet& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  coeffs_[0] += s;
  return *this;
}

void require_compatible(const Jet& a, const Jet& b) {
  if (a.empty() || b.empty()) throw MismatchError("operation on an empty jet");
  if (a.dim() != b.dim()) {
    throw MismatchError("jet dimensions differ: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
  }
  if (a.order() != b.order()) {
    throw MismatchError("jet orders differ: " + std::to_string(a.order()) + " vs " +
                        std::to_string(b.order()));
  }
  if (!same_base(a.base(), b.base())) throw MismatchError("jets expanded at different base points");
}

Jet operator-(Jet a) {
  a *= -1.0;
  return a;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  Jet out(a.order(), a.base());
  fma_into(out, a, b);
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  const auto bc = b.coefficients();
  if (bc[0] == 0.0) throw DomainError("division by a jet with zero constant term");
  Jet out(a.order(), a.base());
  auto oc = out.coefficients();
  const auto ac = a.coefficients();
  const auto& layout = a.layout();
  for (std::size_t k = 0; k < oc.size(); ++k) {
    double acc = ac[k];
    for (const auto& term : layout.products_into(k)) {
      if (term.rhs != 0) acc -= oc[term.lhs] * bc[term.rhs];
    }
    oc[k] = acc / bc[0];
  }
  return out;
}

Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a += -s; }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) {
  if (s == 0.0) throw DomainError("division by zero");
  return a *= 1.0 / s;
}
Jet operator/(double s, const Jet& a) { return Jet::constant(a.order(), a.base(), s) / a; }

void fma_into(Jet& acc, const Jet& a, const Jet& b, double scale) {
  if (acc.dim() != a.dim() || acc.dim() != b.dim()) throw MismatchError("jet dimensions differ");
  if (a.order() < acc.order() || b.order() < acc.order()) {
    throw OrderError("operand order below accumulator order");
  }
  if (!same_base(acc.base(), a.base()) || !same_base(acc.base(), b.base())) {
    throw MismatchError("jets expanded at different base points");
  }
  auto out = acc.coefficients();
  const auto ac = a.coefficients();
  const auto bc = b.coefficients();
  const auto& layout = acc.layout();
  for (std::size_t k = 0; k < out.size(); ++k) {
    double sum = 0.0;
    for (const auto& term : layout.products_into(k)) sum += ac[term.lhs] * bc[term.rhs];
    out[k] += scale * sum;
  }
}

const char* to_string(Elementary f) {
  switch (f) {
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Tan: return "tan";
    case Elementary::Exp: return "exp";
    case Elementary::Log: return "log";
    case Elementary::Sqrt: return "sqrt";
    case Elementary::Sinh: return "sinh";
    case Elementary::Cosh: return "cosh";
    case Elementary::Tanh: return "tanh";
  }
  return "?";
}

Jet apply(Elementary f, const Jet& a) {
  const double x0 = a.value();
  check_domain(f, x0, a.order());
  auto t = series_of(f, x0, a.order());
  t[0] = apply(f, x0);
  Jet shift = a;
  shift.coefficients()[0] = 0.0;
  // Horner in the nilpotent part: sum_k t_k (a - x0)^k
  Jet out = Jet::constant(a.order(), a.base(), t.back());
  for (std::size_t k = t.size() - 1; k-- > 0;) {
    out = out * shift;
    out += t[k];
  }
  return out;
}

double apply(Elementary f, double x) {
  check_domain(f, x, 0);
  switch (f) {
    case Elementary::Sin: return std::sin(x);
    case Elementary::Cos: return std::cos(x);
    case Elementary::Tan: return std::tan(x);
    case Elementary::Exp: return std::exp(x);
    case Elementary::Log: return std::log(x);
    case Elementary::Sqrt: return std::sqrt(x);
    case Elementary::Sinh: return std::sinh(x);
    case Elementary::Cosh: return std::cosh(x);
    case Elementary::Tanh: return std::tanh(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Jet exp(const Jet& a) { return apply(Elementary::Exp, a); }
Jet log(const Jet& a) { return apply(Elementary::Log, a); }
Jet sqrt(const Jet& a) { return apply(Elementary::Sqrt, a); }
Jet sin(const Jet& a) { return apply(Elementary::Sin, a); }
Jet cos(const Jet& a) { return apply(Elementary::Cos, a); }
Jet tan(const Jet& a) { return apply(Elementary::Tan, a); }
Jet sinh(const Jet& a) { return apply(Elementary::Sinh, a); }
Jet cosh(const Jet& a) { return apply(Elementary::Cosh, a); }
Jet tanh(const Jet& a) { return apply(Elementary::Tanh, a); }

namespace {

Jet pow_by_squaring(const Jet& a, unsigned e) {
  Jet result = Jet::constant(a.order(), a.base(), 1.0);
  Jet base = a;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace

Jet pow(const Jet& a, int exponent) {
  if (exponent < 0 && a.value() == 0.0) throw DomainError("negative power of zero");
  Jet result = exponent < 0 ? 1.0 / pow_by_squaring(a, static_cast<unsigned>(-static_cast<long>(exponent)))
                            : pow_by_squaring(a, static_cast<unsigned>(exponent));
  // Same rounding as plain evaluation for the value itself.
  result.coefficients()[0] = std::pow(a.value(), exponent);
  return result;
}

Jet pow(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  if (b.is_constant()) {
    const double e = b.value();
    if (std::nearbyint(e) == e && std::abs(e) <= 1e6) return pow(a, static_cast<int>(e));
  }
  if (!(a.value() > 0.0)) {
    throw DomainError("non-integer power of non-positive base " + std::to_string(a.value()));
  }
  return exp(b * log(a));
}

}  // namespace yamabe
