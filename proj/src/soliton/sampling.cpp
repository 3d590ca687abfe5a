#include "yamabe/soliton/sampling.hpp"

#include <random>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

double radical_inverse(std::size_t k, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double x = 0.0;
  while (k > 0) {
    x += f * static_cast<double>(k % static_cast<std::size_t>(base));
    k /= static_cast<std::size_t>(base);
    f *= inv;
  }
  return x;
}

}  // namespace

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<std::vector<double>> sample_points(const ChartBox& box, const SampleSpec& spec) {
  const std::size_t d = box.lower.size();
  if (d == 0 || box.upper.size() != d) throw PreconditionError("sampling box is malformed");
  if (d > std::size(kPrimes)) throw PreconditionError("sampling supports at most 15 dimensions");
  if (!(spec.margin >= 0.0 && spec.margin < 0.5)) throw PreconditionError("margin must lie in [0, 0.5)");
  std::mt19937_64 rng(spec.seed);
  std::vector<double> shift(d);
  for (double& s : shift) s = unit_interval(rng());
  std::vector<std::vector<double>> out(spec.count, std::vector<double>(d));
  for (std::size_t k = 0; k < spec.count; ++k) {
    for (std::size_t v = 0; v < d; ++v) {
      double u = radical_inverse(k + 1, kPrimes[v]) + shift[v];
      if (u >= 1.0) u -= 1.0;
      const double t = spec.margin + (1.0 - 2.0 * spec.margin) * u;
      out[k][v] = box.lower[v] + t * (box.upper[v] - box.lower[v]);
    }
  }
  return out;
}

}  // namespace yamabe
