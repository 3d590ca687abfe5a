#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "yamabe/geometry/metric_field.hpp"

namespace yamabe::fixture {

inline MetricField euclidean(int n) {
  std::vector<std::string> coords;
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(n),
                                             std::vector<std::string>(static_cast<std::size_t>(n), "0"));
  for (int i = 0; i < n; ++i) {
    coords.push_back("x" + std::to_string(i + 1));
    rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = "1";
  }
  return make_metric_field(coords, {}, rows);
}

/// dr^2 + r^2 dt^2 + r^2 sin(t)^2 dp^2
inline MetricField flat_spherical() {
  return make_metric_field({"r", "t", "p"}, {},
                           {{"1", "0", "0"}, {"0", "r^2", "0"}, {"0", "0", "r^2*sin(t)^2"}});
}

/// Unit round S^3 in hyperspherical coordinates.
inline MetricField sphere3() {
  return make_metric_field({"c", "t", "p"}, {},
                           {{"1", "0", "0"}, {"0", "sin(c)^2", "0"}, {"0", "0", "sin(c)^2*sin(t)^2"}});
}

/// Unit round S^4 in hyperspherical coordinates.
inline MetricField sphere4() {
  return make_metric_field({"a", "b", "c", "d"}, {},
                           {{"1", "0", "0", "0"},
                            {"0", "sin(a)^2", "0", "0"},
                            {"0", "0", "sin(a)^2*sin(b)^2", "0"},
                            {"0", "0", "0", "sin(a)^2*sin(b)^2*sin(c)^2"}});
}

/// Hyperbolic 3-space, upper half-space model.
inline MetricField hyperbolic3() {
  return make_metric_field({"x", "y", "z"}, {},
                           {{"1/z^2", "0", "0"}, {"0", "1/z^2", "0"}, {"0", "0", "1/z^2"}});
}

/// dr^2 + fp(r)^2 (dt^2 + sin(t)^2 dp^2), a warped product over the unit sphere.
inline MetricField warped3(const std::string& fp) {
  const std::string w = "(" + fp + ")^2";
  return make_metric_field({"r", "t", "p"}, {},
                           {{"1", "0", "0"}, {"0", w, "0"}, {"0", "0", w + "*sin(t)^2"}});
}

inline MetricField random_metric(std::mt19937_64& rng, int n) {
  std::vector<std::string> coords;
  for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
  return make_metric_field(coords, {}, oracle::random_metric_sources(rng, coords));
}

inline std::vector<double> random_point(std::mt19937_64& rng, int n, double half_width = 0.6) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (double& x : p) x = u(rng);
  return p;
}

}  // namespace yamabe::fixture
