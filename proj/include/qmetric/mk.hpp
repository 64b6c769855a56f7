#pragma once

// Monge-Kantorovich distances between states of C(X, A).
//
// With the real-max norm every constraint of the Lip ball is a box on a real
// coordinate, so the distance is an LP.  For the operator and max norms the
// LP runs on balls nested around the true one and an interval comes back.

#include <cstdint>
#include <optional>
#include <vector>

#include "qmetric/funcspace.hpp"
#include "qmetric/lp.hpp"

namespace qmetric {

struct MkOptions {
  bool refine = false;  // 16-gon polygons for complex moduli in interval mode
  LpOptions lp{};
};

struct MkResult {
  enum class Kind { exact, interval };
  Kind kind = Kind::exact;
  double value = 0.0;  // exact only
  double lower = 0.0;  // equals value when exact
  double upper = 0.0;
  std::optional<MatrixFunction> witness;  // exact only; already re-verified
  std::size_t pivots = 0;
};

MkResult mk_distance(const FunctionalState& mu, const FunctionalState& nu, const FiniteMetricSpace& x,
                     const Algebra& alg, const SeminormSpec& spec, const MkOptions& opt = {},
                     const Tolerances& tol = {});

/// Symmetric matrix of mk between all pairs of `states`; pairs run in
/// parallel into fixed slots, so the output does not depend on scheduling.
std::vector<std::vector<MkResult>> mk_matrix(const std::vector<FunctionalState>& states, const FiniteMetricSpace& x,
                                             const Algebra& alg, const SeminormSpec& spec, const MkOptions& opt = {},
                                             const Tolerances& tol = {});

/// The a-priori bound on the state-space diameter for `spec`.
double diameter_cap(const SeminormSpec& spec, const FiniteMetricSpace& x, const Algebra& alg);

struct DiameterReport {
  std::vector<double> lower;  // per pair
  std::vector<double> upper;
  double max_observed = 0.0;  // max of the upper ends
  double cap = 0.0;
  std::size_t exceedances = 0;  // pairs whose lower end is above cap + tol
  bool ok() const { return exceedances == 0; }
};

DiameterReport mk_diameter_report(const std::vector<std::pair<FunctionalState, FunctionalState>>& pairs,
                                  const FiniteMetricSpace& x, const Algebra& alg, const SeminormSpec& spec,
                                  const MkOptions& opt = {}, const Tolerances& tol = {});

/// Lipschitz constant of x -> mu_x under a real-max spec:
/// sum of |mu(e)| over diagonal units plus sqrt(2) times the off-diagonal sum.
double embed_upper_constant(const AlgState& mu);
/// Lower Lipschitz constant of x -> mu_x for the spec's q-term.
double embed_lower_constant(const SeminormSpec& spec, double diam);

struct EmbedPair {
  std::size_t i = 0, j = 0;
  double d = 0.0;
  double mk = 0.0;
};

struct EmbedReport {
  std::vector<EmbedPair> pairs;
  double upper_constant = 0.0;
  double lower_constant = 0.0;
  double max_abs_defect = 0.0;  // max |mk - d|
  double max_rel_defect = 0.0;  // max |mk/d - 1|
  std::size_t upper_violations = 0;
  std::size_t lower_violations = 0;
  bool ok() const { return upper_violations == 0 && lower_violations == 0; }
};

/// mk(mu_x, mu_y) against d(x, y) for every pair; spec must be LP-exact.
EmbedReport embed_check(const FiniteMetricSpace& x, const Algebra& alg, const AlgState& mu, const SeminormSpec& spec,
                        const MkOptions& opt = {}, const Tolerances& tol = {});

/// Extreme points of the spec's Lip ball: LP optima for `count` random
/// linear objectives drawn from `seed`.  Spec must be LP-exact.
std::vector<MatrixFunction> sample_unit_ball(const FiniteMetricSpace& x, const Algebra& alg, const SeminormSpec& spec,
                                             std::size_t count, std::uint64_t seed, const MkOptions& opt = {},
                                             const Tolerances& tol = {});

}  // namespace qmetric
