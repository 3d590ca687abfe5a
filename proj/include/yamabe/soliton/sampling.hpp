#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "yamabe/soliton/soliton_spec.hpp"

namespace yamabe {

struct SampleSpec {
  std::size_t count = 64;
  std::uint64_t seed = 0;
  /// Fraction of each box side kept clear at both ends.
  double margin = 0.05;
};

/// Randomly shifted Halton points inside the box, shrunk by the margin.
/// The same spec always yields the same points.
std::vector<std::vector<double>> sample_points(const ChartBox& box, const SampleSpec& spec);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_interval(std::uint64_t bits);

}  // namespace yamabe
