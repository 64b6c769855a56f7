#pragma once

// Propinquity upper bounds between C(X, A) and C(Y, A) with the conv Lip-norm,
// through the identity-pivot bridge over a joined space X u Y.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmetric/mk.hpp"

namespace qmetric {

struct Bridge {
  JoinedSpace joined;
  FiniteMetricSpace union_space;  // joined as a metric space, labels "x:..", "y:.."
  Algebra algebra;
  double epsilon = 0.0;
  double offset = 0.0;     // eps / (8 sqrt2 m_A), added to every cross distance
  double delta_xy = 0.0;   // Hausdorff distance of the supplied cross matrix
  double threshold = 0.0;  // delta_xy + eps / (2 sqrt2 m_A)
  double height = 0.0;     // identity pivot
  std::vector<std::pair<std::size_t, std::size_t>> w_set;  // (x, y) with joined distance <= threshold
};

Bridge build_bridge(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const DistMatrix& cross, double epsilon,
                    const Algebra& alg, const Tolerances& tol = {});

/// The same bridge seen from Y: spaces swapped, cross transposed.
Bridge reverse(const Bridge& b, const Tolerances& tol = {});

struct MatchRecord {
  std::string direction;  // "X->Y" or "Y->X"
  std::size_t sample = 0;
  double source_lipnorm = 0.0;
  double matched_lipnorm = 0.0;
  double matched_q_at_source_r = 0.0;  // sup ||b(y) - r_a||, r_a the best scalar for a
  double w_defect = 0.0;               // max over W of ||a(x) - b(y)||_realmax
  double w_threshold = 0.0;
  double op_defect = 0.0;              // same in the C*-norm
  double op_threshold = 0.0;           // sqrt2 m_A * w_threshold
  bool ok = false;
};

struct Matched {
  MatrixFunction b;
  MatchRecord record;
};

/// Extends the real and imaginary parts of every entry of `a` (on X) over the
/// joined space, restricts to Y, and checks the result against the bridge.
Matched match_element(const Bridge& bridge, const MatrixFunction& a, const Tolerances& tol = {});

struct PropinquityBound {
  double delta_xy = 0.0;
  double epsilon = 0.0;
  double bound = 0.0;  // sqrt2 m_A delta_xy + eps/2
  double height = 0.0;
  std::vector<MatchRecord> certificates;
  bool certified() const;
};

/// Closed-form bound plus match certificates for the given unit-ball samples
/// on X and on Y.
PropinquityBound propinquity_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const DistMatrix& cross, double epsilon, const Algebra& alg,
                                         const std::vector<MatrixFunction>& samples_x,
                                         const std::vector<MatrixFunction>& samples_y, const Tolerances& tol = {});

/// As above, drawing `samples` Lip-ball vertices on each side from `seed`.
PropinquityBound propinquity_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const DistMatrix& cross, double epsilon, const Algebra& alg,
                                         std::size_t samples, std::uint64_t seed, const Tolerances& tol = {});

struct ApproxRow {
  double eps_n = 0.0;
  std::size_t net_size = 0;
  double hausdorff = 0.0;
  double delta_xy = 0.0;
  double bound = 0.0;
  std::size_t certificates = 0;
  bool certified = false;
};

/// One row per schedule entry: greedy net X_n, and the bound between C(X_n, A)
/// and C(X, A) with the cross matrix restricted from d_X.
std::vector<ApproxRow> approx_table(const FiniteMetricSpace& x, const Algebra& alg,
                                    const std::vector<double>& eps_schedule, double epsilon, std::size_t samples,
                                    std::uint64_t seed, const Tolerances& tol = {});

/// The conv spec used throughout this module.
SeminormSpec conv_spec();

/// CSV with columns eps_n,net_size,hausdorff,delta_xy,bound.
void write_table_csv(std::ostream& os, const std::vector<ApproxRow>& rows);

}  // namespace qmetric
