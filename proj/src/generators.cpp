#include "qmetric/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

FiniteMetricSpace circle_net(std::size_t n, CircleMetric metric, double diam) {
  if (n == 0) throw PreconditionError("circle_net: need at least one point");
  DistMatrix d(n, std::vector<double>(n, 0.0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("t" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      const double t = static_cast<double>(k) / static_cast<double>(n);
      d[i][j] = metric == CircleMetric::chord ? 2.0 * std::sin(std::numbers::pi * t) : std::min(t, 1.0 - t);
    }
    d[i][i] = 0.0;
  }
  auto x = FiniteMetricSpace::validate(d, labels);
  const double cur = diameter(x);
  if (diam > 0.0 && cur > 0.0) x = scale(x, diam / cur);
  return x;
}

FiniteMetricSpace interval_net(std::size_t n, double length) {
  if (n == 0) throw PreconditionError("interval_net: need at least one point");
  if (!(length > 0.0)) throw PreconditionError("interval_net: length must be > 0");
  DistMatrix d(n, std::vector<double>(n, 0.0));
  const double step = n > 1 ? length / static_cast<double>(n - 1) : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = step * std::abs(static_cast<double>(i) - static_cast<double>(j));
  return FiniteMetricSpace::validate(d);
}

FiniteMetricSpace random_planar(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("random_planar: need at least one point");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = u(rng);
    py[i] = u(rng);
  }
  DistMatrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::hypot(px[i] - px[j], py[i] - py[j]);
  return FiniteMetricSpace::validate(d);
}

}  // namespace qmetric
