#pragma once

// Built-in test spaces: circle nets under the chord and arc-length metrics,
// interval nets and random planar point clouds.

#include <cstddef>
#include <cstdint>

#include "qmetric/metric.hpp"

namespace qmetric {

enum class CircleMetric { chord, arc };

/// n equally spaced points.  chord: unit circle in the plane, d = 2 sin(pi k / n).
/// arc: circle of circumference 1, d = min(t, 1 - t).  If diam > 0 the result
/// is rescaled to that diameter.
FiniteMetricSpace circle_net(std::size_t n, CircleMetric metric = CircleMetric::chord, double diam = 0.0);

/// n equally spaced points on [0, length].
FiniteMetricSpace interval_net(std::size_t n, double length = 1.0);

/// n uniform points in the unit square with Euclidean distances.
FiniteMetricSpace random_planar(std::size_t n, std::uint64_t seed);

}  // namespace qmetric
