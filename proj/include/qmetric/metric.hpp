#pragma once

// Finite metric spaces, Hausdorff and Gromov-Hausdorff distances, joined
// (disjoint-union) spaces and greedy epsilon-nets.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmetric/tolerances.hpp"

namespace qmetric {

using DistMatrix = std::vector<std::vector<double>>;

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;  // empty space

  /// Checks the metric axioms and returns the space, or throws PreconditionError
  /// naming the first violated axiom and its indices.  Empty labels default to
  /// "0", "1", ...
  static FiniteMetricSpace validate(const DistMatrix& dist, std::vector<std::string> labels = {},
                                    const Tolerances& tol = {});

  std::size_t size() const { return n_; }
  double d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  DistMatrix matrix() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

double diameter(const FiniteMetricSpace& x);

/// Two-sided Hausdorff distance between non-empty index subsets of `x`.
double hausdorff(const FiniteMetricSpace& x, std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Exact GH distance: half the minimal distortion over correspondences, by
/// branch-and-bound over pairs of maps f: X -> Y, g: Y -> X.  Throws
/// PreconditionError when either space exceeds `cap` points.
double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t cap = 5);

/// Distortion of a correspondence given as (x, y) index pairs.
double distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// X and Y glued along |X| x |Y| cross distances plus a constant offset.
/// Points 0..|X|-1 of `joined` are X, the rest are Y.
struct JoinedSpace {
  FiniteMetricSpace x;
  FiniteMetricSpace y;
  DistMatrix cross;  // without the offset
  double offset = 0.0;
  DistMatrix joined;  // full (|X|+|Y|)^2 matrix, offset folded in

  double d(std::size_t i, std::size_t j) const { return joined[i][j]; }
  std::size_t size() const { return joined.size(); }
};

/// Builds the joined space and validates the triangle inequality on all
/// triples.  With offset 0 coincident cross points (distance 0) are allowed.
JoinedSpace join(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross, double offset = 0.0,
                 const Tolerances& tol = {});

/// Hausdorff distance between X and Y inside the joined space (offset 0): an
/// upper bound for the GH distance.
double gh_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross,
                const Tolerances& tol = {});

/// Greedy farthest-point subset S with hausdorff(S, X) <= eps, seeded at `seed`.
std::vector<std::size_t> epsilon_net(const FiniteMetricSpace& x, double eps, std::size_t seed = 0);

FiniteMetricSpace scale(const FiniteMetricSpace& x, double c);
FiniteMetricSpace subspace(const FiniteMetricSpace& x, std::span<const std::size_t> indices);
/// Cross distances from the listed points of `x` to all of `x`.
DistMatrix restricted_cross(const FiniteMetricSpace& x, std::span<const std::size_t> indices);

}  // namespace qmetric
