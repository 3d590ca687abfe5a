#pragma once

// Test-only oracles. Nothing here touches the jet machinery: derivatives are
// taken by finite differences of plain double evaluations.

#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace yamabe::oracle {

/// Fornberg's weights for the m-th derivative at x0 from samples at `nodes`.
inline std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<std::vector<double>>> d(
      static_cast<std::size_t>(m + 1),
      std::vector<std::vector<double>>(static_cast<std::size_t>(n + 1),
                                       std::vector<double>(static_cast<std::size_t>(n + 1), 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, m); ++k) {
        auto K = static_cast<std::size_t>(k);
        auto I = static_cast<std::size_t>(i);
        auto J = static_cast<std::size_t>(j);
        d[K][I][J] = ((nodes[I] - x0) * d[K][I - 1][J] - (k > 0 ? k * d[K - 1][I - 1][J] : 0.0)) / c3;
      }
    }
    for (int k = 0; k <= std::min(i, m); ++k) {
      auto K = static_cast<std::size_t>(k);
      auto I = static_cast<std::size_t>(i);
      d[K][I][I] = c1 / c2 *
                   ((k > 0 ? k * d[K - 1][I - 1][I - 1] : 0.0) -
                    (nodes[I - 1] - x0) * d[K][I - 1][I - 1]);
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) w[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
  return w;
}

/// Central stencil offsets (in units of h) for derivative order m with `accuracy` (even).
inline std::vector<double> central_offsets(int m, int accuracy) {
  const int half = (m + 1) / 2 - 1 + accuracy / 2;
  std::vector<double> offs;
  for (int k = -half; k <= half; ++k) offs.push_back(k);
  return offs;
}

using ScalarFn = std::function<double(std::span<const double>)>;

/// d^alpha f at x by a tensor product of central stencils with step h.
inline double fd_partial(const ScalarFn& f, std::span<const double> x, std::span<const int> alpha,
                         double h, int accuracy = 8) {
  const std::size_t d = x.size();
  std::vector<std::vector<double>> offs(d);
  std::vector<std::vector<double>> wts(d);
  for (std::size_t v = 0; v < d; ++v) {
    if (alpha[v] == 0) {
      offs[v] = {0.0};
      wts[v] = {1.0};
      continue;
    }
    offs[v] = central_offsets(alpha[v], accuracy);
    wts[v] = fornberg_weights(0.0, offs[v], alpha[v]);
    for (double& w : wts[v]) w /= std::pow(h, alpha[v]);
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(x.begin(), x.end());
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t v = 0; v < d; ++v) {
      p[v] = x[v] + offs[v][idx[v]] * h;
      w *= wts[v][idx[v]];
    }
    if (w != 0.0) sum += w * f(p);
    std::size_t v = 0;
    while (v < d && ++idx[v] == offs[v].size()) idx[v++] = 0;
    if (v == d) break;
  }
  return sum;
}

/// fd_partial with the step chosen from a ladder by the smallest change between neighbours.
inline double fd_partial_adaptive(const ScalarFn& f, std::span<const double> x,
                                  std::span<const int> alpha, int accuracy = 8) {
  const double steps[] = {0.4, 0.2, 0.1, 0.05, 0.025};
  double prev = fd_partial(f, x, alpha, steps[0], accuracy);
  double best = prev;
  double best_change = INFINITY;
  for (std::size_t i = 1; i < std::size(steps); ++i) {
    const double cur = fd_partial(f, x, alpha, steps[i], accuracy);
    const double change = std::abs(cur - prev);
    if (change < best_change) {
      best_change = change;
      best = cur;
    }
    prev = cur;
  }
  return best;
}

/// Random smooth scalar expression source in the given variables with bounded derivatives.
inline std::string random_expression(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_real_distribution<double> coef(-0.9, 0.9);
  std::uniform_int_distribution<int> pick(0, 9);
  auto num = [&](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::abs(v));
    return std::string(buf);
  };
  auto linear = [&] {
    std::string s = num(coef(rng));
    for (const auto& v : vars) {
      const double c = coef(rng);
      s += (c < 0 ? " - " : " + ") + num(c) + "*" + v;
    }
    return "(" + s + ")";
  };
  if (depth <= 0) return linear();
  const std::string a = random_expression(rng, vars, depth - 1);
  const std::string b = random_expression(rng, vars, depth - 1);
  switch (pick(rng)) {
    case 0: return "sin(" + a + ")";
    case 1: return "cos(" + a + ")*" + b;
    case 2: return "exp(0.5*" + a + ")";
    case 3: return "(" + a + ")/(2 + sin(" + b + "))";
    case 4: return "sqrt(2 + (" + a + ")^2)";
    case 5: return "log(3 + cos(" + a + "))";
    case 6: return "tanh(" + a + ") - " + b;
    case 7: return "(" + a + ")^3 + (" + b + ")^2";
    case 8: return "(1.5 + sin(" + a + "))^1.7";
    default: return "cosh(0.5*" + a + ")*sinh(0.3*" + b + ")";
  }
}

/// A random symmetric positive definite metric given as expression sources. Diagonal entries
/// stay in [0.8, 1.3] and off-diagonal entries within +-0.1, so Gershgorin keeps it definite
/// for n <= 4.
inline std::vector<std::vector<std::string>> random_metric_sources(std::mt19937_64& rng,
                                                                   const std::vector<std::string>& vars) {
  std::uniform_real_distribution<double> c(-0.8, 0.8);
  auto phase = [&] {
    std::string s;
    char buf[64];
    for (const auto& v : vars) {
      std::snprintf(buf, sizeof buf, "%.4f*%s + ", c(rng), v.c_str());
      s += buf;
    }
    std::snprintf(buf, sizeof buf, "%.4f", c(rng));
    return s + buf;
  };
  const std::size_t n = vars.size();
  std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i) {
    g[i][i] = "1 + 0.2*sin(" + phase() + ") + 0.1*cos(" + phase() + ")^2";
    for (std::size_t j = i + 1; j < n; ++j) {
      g[i][j] = "0.1*sin(" + phase() + ")*exp(0.3*cos(" + phase() + "))/1.35";
      g[j][i] = g[i][j];
    }
  }
  return g;
}

}  // namespace yamabe::oracle
