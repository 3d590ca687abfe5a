#include "yamabe/geometry/local_geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

std::string describe_point(std::span<const double> p) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

std::size_t stride(int n, int rank, int slot) {
  std::size_t s = 1;
  for (int i = slot + 1; i < rank; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

}  // namespace

LocalGeometry::LocalGeometry(const MetricField& field, std::span<const double> point, int order,
                             double max_condition)
    : field_(field), dim_(field.dim()), order_(order) {
  if (dim_ < 2) throw DimensionError("metric dimension must be at least 2");
  if (static_cast<int>(point.size()) != dim_) {
    throw PreconditionError("point has " + std::to_string(point.size()) + " coordinates, chart has " +
                            std::to_string(dim_));
  }
  if (order < 0) throw OrderError("negative jet order");
  base_ = make_base_point(std::vector<double>(point.begin(), point.end()));
  const auto bindings = field_.bindings();
  const auto n = static_cast<std::size_t>(dim_);

  metric_ = JetTensor(dim_, 2, order_, base_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      Jet g = eval_jet(field_.component(i, j), bindings, base_, order_);
      metric_.at({j, i}) = g;
      metric_.at({i, j}) = std::move(g);
    }
  }

  Eigen::MatrixXd g0(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) g0(i, j) = metric_.at({i, j}).value();
  }
  if (!g0.allFinite()) throw SingularMetricError("metric is not finite at " + describe_point(point));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g0, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  const double smallest = ev.cwiseAbs().minCoeff();
  diagnostics_.min_eigenvalue = ev.minCoeff();
  diagnostics_.positive_definite = ev.minCoeff() > 0.0;
  diagnostics_.condition_number = smallest > 0.0 ? largest / smallest : INFINITY;
  if (!(diagnostics_.condition_number <= max_condition)) {
    throw SingularMetricError("metric is singular at " + describe_point(point) +
                              " (condition number " + std::to_string(diagnostics_.condition_number) +
                              ")");
  }

  // Gauss-Jordan elimination over jets, pivoting on the constant terms.
  std::vector<Jet> a(n * n);
  std::vector<Jet> inv(n * n, Jet(order_, base_));
  for (std::size_t i = 0; i < n * n; ++i) a[i] = metric_[i];
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = Jet::constant(order_, base_, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c].value()) > std::abs(a[pivot * n + c].value())) pivot = r;
    }
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[c * n + k], a[pivot * n + k]);
        std::swap(inv[c * n + k], inv[pivot * n + k]);
      }
    }
    const Jet scale = 1.0 / a[c * n + c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c * n + k] = a[c * n + k] * scale;
      inv[c * n + k] = inv[c * n + k] * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Jet factor = a[r * n + c];
      for (std::size_t k = 0; k < n; ++k) {
        fma_into(a[r * n + k], factor, a[c * n + k], -1.0);
        fma_into(inv[r * n + k], factor, inv[c * n + k], -1.0);
      }
    }
  }
  inverse_ = JetTensor(dim_, 2, order_, base_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // symmetrize to remove elimination round-off asymmetry
      Jet s = (inv[i * n + j] + inv[j * n + i]) * 0.5;
      inverse_[j * n + i] = s;
      inverse_[i * n + j] = std::move(s);
    }
  }
}

void LocalGeometry::require_order(int needed, const char* what) const {
  if (order_ < needed) {
    throw OrderError(std::string(what) + " needs metric jets of order " + std::to_string(needed) +
                     ", have " + std::to_string(order_));
  }
}

const JetTensor& LocalGeometry::christoffel() const {
  if (christoffel_) return *christoffel_;
  require_order(1, "Christoffel symbols");
  const int n = dim_;
  const int m = order_ - 1;
  // dg[a][b][c] = d_a g_bc
  std::vector<Jet> dg(static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) dg[static_cast<std::size_t>((a * n + b) * n + c)] = metric_at(b, c).derivative(a);
    }
  }
  auto d = [&](int a, int b, int c) -> const Jet& { return dg[static_cast<std::size_t>((a * n + b) * n + c)]; };
  JetTensor gamma(n, 3, m, base_);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        Jet first = (d(i, j, l) + d(j, i, l) - d(l, i, j)) * 0.5;
        for (int k = 0; k < n; ++k) fma_into(gamma.at({k, i, j}), inverse_at(k, l), first);
      }
      for (int k = 0; k < n; ++k) gamma.at({k, j, i}) = gamma.at({k, i, j});
    }
  }
  christoffel_ = std::move(gamma);
  return *christoffel_;
}

const JetTensor& LocalGeometry::riemann() const {
  if (riemann_) return *riemann_;
  require_order(2, "Riemann tensor");
  const int n = dim_;
  const int m = order_ - 2;
  const JetTensor& g = christoffel();
  // R^a_{lij} = d_i G^a_jl - d_j G^a_il + G^a_ip G^p_jl - G^a_jp G^p_il
  JetTensor up(n, 4, m, base_);
  for (int a = 0; a < n; ++a) {
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          Jet r = g.at({a, j, l}).derivative(i) - g.at({a, i, l}).derivative(j);
          for (int p = 0; p < n; ++p) {
            fma_into(r, g.at({a, i, p}), g.at({p, j, l}));
            fma_into(r, g.at({a, j, p}), g.at({p, i, l}), -1.0);
          }
          up.at({a, l, j, i}) = -r;
          up.at({a, l, i, j}) = std::move(r);
        }
      }
    }
  }
  // R_ijkl = g_ka R^a_{lij}
  JetTensor low(n, 4, m, base_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet& out = low.at({i, j, k, l});
          for (int a = 0; a < n; ++a) fma_into(out, metric_at(k, a), up.at({a, l, i, j}));
        }
      }
    }
  }
  riemann_ = std::move(low);
  return *riemann_;
}

const JetTensor& LocalGeometry::ricci() const {
  if (ricci_) return *ricci_;
  const int n = dim_;
  const JetTensor& rm = riemann();
  JetTensor ric(n, 2, rm.order(), base_);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet& out = ric.at({i, j});
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) fma_into(out, inverse_at(p, q), rm.at({i, p, j, q}));
      }
      ric.at({j, i}) = out;
    }
  }
  ricci_ = std::move(ric);
  return *ricci_;
}

const Jet& LocalGeometry::scalar() const {
  if (scalar_) return *scalar_;
  const JetTensor& ric = ricci();
  Jet r(ric.order(), base_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) fma_into(r, inverse_at(i, j), ric.at({i, j}));
  }
  scalar_ = std::move(r);
  return *scalar_;
}

const JetTensor& LocalGeometry::schouten() const {
  if (schouten_) return *schouten_;
  if (dim_ < 3) throw DimensionError("Schouten tensor needs dimension >= 3");
  const JetTensor& ric = ricci();
  const Jet& r = scalar();
  const double c = 1.0 / (2.0 * (dim_ - 1));
  JetTensor s = ric;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) fma_into(s.at({i, j}), r, metric_at(i, j), -c);
  }
  schouten_ = std::move(s);
  return *schouten_;
}

const JetTensor& LocalGeometry::weyl() const {
  if (weyl_) return *weyl_;
  if (dim_ < 3) throw DimensionError("Weyl tensor needs dimension >= 3");
  const int n = dim_;
  const JetTensor& rm = riemann();
  const JetTensor& ric = ricci();
  const Jet& r = scalar();
  const int m = rm.order();
  const double a = 1.0 / (n - 2);
  const double b = 1.0 / ((n - 1.0) * (n - 2.0));
  JetTensor w = rm;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet& out = w.at({i, j, k, l});
          fma_into(out, ric.at({i, k}), metric_at(j, l), -a);
          fma_into(out, ric.at({j, l}), metric_at(i, k), -a);
          fma_into(out, ric.at({i, l}), metric_at(j, k), a);
          fma_into(out, ric.at({j, k}), metric_at(i, l), a);
          Jet gg(m, base_);
          fma_into(gg, metric_at(i, k), metric_at(j, l));
          fma_into(gg, metric_at(i, l), metric_at(j, k), -1.0);
          fma_into(out, r, gg, b);
        }
      }
    }
  }
  weyl_ = std::move(w);
  return *weyl_;
}

JetTensor LocalGeometry::covariant_derivative(const JetTensor& t) const {
  if (t.order() < 1) throw OrderError("covariant derivative of an order-0 field");
  const JetTensor& gamma = christoffel();
  const JetTensor src = t.order() - 1 > gamma.order() ? t.truncated(gamma.order() + 1) : t;
  const int n = dim_;
  const int r = src.rank();
  JetTensor out(n, r + 1, src.order() - 1, base_);
  std::vector<int> idx(static_cast<std::size_t>(r + 1));
  std::vector<std::size_t> strides(static_cast<std::size_t>(r));
  for (int s = 0; s < r; ++s) strides[static_cast<std::size_t>(s)] = stride(n, r, s);
  const std::size_t inner = src.size();
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, idx);
    const int k = idx[0];
    const std::size_t tf = f % inner;
    Jet d = src[tf].derivative(k);
    for (int s = 0; s < r; ++s) {
      const int is = idx[static_cast<std::size_t>(s + 1)];
      const std::size_t st = strides[static_cast<std::size_t>(s)];
      const std::size_t base_flat = tf - static_cast<std::size_t>(is) * st;
      for (int l = 0; l < n; ++l) {
        fma_into(d, gamma.at({l, k, is}), src[base_flat + static_cast<std::size_t>(l) * st], -1.0);
      }
    }
    out[f] = std::move(d);
  }
  return out;
}

const JetTensor& LocalGeometry::cotton() const {
  if (cotton_) return *cotton_;
  require_order(3, "Cotton tensor");
  const int n = dim_;
  const JetTensor ds = covariant_derivative(schouten());
  JetTensor c(n, 3, ds.order(), base_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) c.at({i, j, k}) = ds.at({i, j, k}) - ds.at({j, i, k});
    }
  }
  cotton_ = std::move(c);
  return *cotton_;
}

JetTensor LocalGeometry::cotton_ricci_form() const {
  require_order(3, "Cotton tensor");
  if (dim_ < 3) throw DimensionError("Cotton tensor needs dimension >= 3");
  const int n = dim_;
  const JetTensor dric = covariant_derivative(ricci());
  const JetTensor dr = gradient(scalar());
  const double c = 1.0 / (2.0 * (n - 1));
  JetTensor out(n, 3, dric.order(), base_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Jet v = dric.at({i, j, k}) - dric.at({j, i, k});
        fma_into(v, metric_at(j, k), dr.at({i}), -c);
        fma_into(v, metric_at(i, k), dr.at({j}), c);
        out.at({i, j, k}) = std::move(v);
      }
    }
  }
  return out;
}

namespace {

// R_kl W_i^k_j^l
JetTensor ricci_weyl_term(const LocalGeometry& geo) {
  const int n = geo.dim();
  const JetTensor ric_up = geo.raise_all(geo.ricci());
  const JetTensor& w = geo.weyl();
  JetTensor out(n, 2, w.order(), geo.base());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) fma_into(out.at({i, j}), ric_up.at({k, l}), w.at({i, k, j, l}));
      }
    }
  }
  return out;
}

// nabla^k C_kij
JetTensor cotton_divergence(const LocalGeometry& geo) {
  const int n = geo.dim();
  const JetTensor dc = geo.covariant_derivative(geo.cotton());
  const JetTensor& ginv = geo.inverse_metric();
  JetTensor out(n, 2, dc.order(), geo.base());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k) fma_into(out.at({i, j}), ginv.at({l, k}), dc.at({l, k, i, j}));
      }
    }
  }
  return out;
}

}  // namespace

const JetTensor& LocalGeometry::bach() const {
  if (bach_) return *bach_;
  require_order(4, "Bach tensor");
  const int n = dim_;
  if (n < 3) throw DimensionError("Bach tensor needs dimension >= 3");
  if (n == 3) {
    bach_ = cotton_divergence(*this);
    return *bach_;
  }
  const JetTensor ddw = covariant_derivative(covariant_derivative(weyl()));
  const int m = ddw.order();
  // z[a][k][i][j] = g^lb nabla_a nabla_b W_ikjl
  JetTensor z(n, 4, m, base_);
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Jet& out = z.at({a, k, i, j});
          for (int b = 0; b < n; ++b) {
            for (int l = 0; l < n; ++l) {
              const std::size_t f =
                  ((((static_cast<std::size_t>(a) * n + b) * n + i) * n + k) * n + j) * n + l;
              fma_into(out, inverse_at(l, b), ddw[f]);
            }
          }
        }
      }
    }
  }
  const JetTensor rw = ricci_weyl_term(*this);
  JetTensor b(n, 2, m, base_);
  const double c1 = 1.0 / (n - 3);
  const double c2 = 1.0 / (n - 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet& out = b.at({i, j});
      for (int a = 0; a < n; ++a) {
        for (int k = 0; k < n; ++k) fma_into(out, inverse_at(k, a), z.at({a, k, i, j}), c1);
      }
      Jet tail = rw.at({i, j}).truncated(m);
      tail *= c2;
      out += tail;
    }
  }
  bach_ = std::move(b);
  return *bach_;
}

JetTensor LocalGeometry::bach_cotton_form() const {
  require_order(4, "Bach tensor");
  if (dim_ < 4) throw DimensionError("the Weyl/Cotton Bach formula needs dimension >= 4");
  const JetTensor div = cotton_divergence(*this);
  const JetTensor rw = ricci_weyl_term(*this);
  JetTensor out(dim_, 2, div.order(), base_);
  const double c = 1.0 / (dim_ - 2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    out[f] = (div[f] + rw[f].truncated(div.order())) * c;
  }
  return out;
}

Jet LocalGeometry::scalar_field(const Expr& f) const {
  return eval_jet(f, field_.bindings(), base_, order_);
}

JetTensor LocalGeometry::gradient(const Jet& f) const {
  if (f.order() < 1) throw OrderError("gradient of an order-0 field");
  JetTensor out(dim_, 1, f.order() - 1, base_);
  for (int i = 0; i < dim_; ++i) out.at({i}) = f.derivative(i);
  return out;
}

JetTensor LocalGeometry::hessian(const Jet& f) const { return covariant_derivative(gradient(f)); }

Jet LocalGeometry::laplacian(const Jet& f) const {
  const JetTensor h = hessian(f);
  Jet out(h.order(), base_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) fma_into(out, inverse_at(i, j), h.at({i, j}));
  }
  return out;
}

JetTensor LocalGeometry::raise_all(const JetTensor& t) const {
  const int n = dim_;
  const int r = t.rank();
  JetTensor cur = t;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int s = 0; s < r; ++s) {
    const std::size_t st = stride(n, r, s);
    JetTensor next(n, r, t.order(), base_);
    for (std::size_t f = 0; f < next.size(); ++f) {
      next.unflatten(f, idx);
      const int a = idx[static_cast<std::size_t>(s)];
      const std::size_t base_flat = f - static_cast<std::size_t>(a) * st;
      for (int c = 0; c < n; ++c) fma_into(next[f], inverse_at(a, c), cur[base_flat + static_cast<std::size_t>(c) * st]);
    }
    cur = std::move(next);
  }
  return cur;
}

Jet LocalGeometry::contract(const JetTensor& a, const JetTensor& b) const {
  if (a.rank() != b.rank()) throw MismatchError("contraction of tensors with different rank");
  const int m = std::min(a.order(), b.order());
  const JetTensor bu = raise_all(b);
  Jet out(m, base_);
  for (std::size_t f = 0; f < a.size(); ++f) fma_into(out, a[f], bu[f]);
  return out;
}

Jet LocalGeometry::inner(const JetTensor& a, const JetTensor& b) const { return contract(a, b); }

}  // namespace yamabe
