#pragma once

// States on C(X, A) as finite convex combinations of  phi (x) delta_x.

#include <cstddef>
#include <vector>

#include "qmetric/function.hpp"

namespace qmetric {

struct StateTerm {
  double weight = 0.0;
  std::size_t point = 0;
  AlgState phi;
};

class FunctionalState {
 public:
  /// Weights must be non-negative and sum to 1 (tol.state); points must be
  /// indices below `point_count`, each phi must fit `alg`.
  FunctionalState(std::vector<StateTerm> terms, std::size_t point_count, const Algebra& alg,
                  const Tolerances& tol = {});

  const std::vector<StateTerm>& terms() const { return terms_; }
  std::size_t point_count() const { return point_count_; }

 private:
  std::vector<StateTerm> terms_;
  std::size_t point_count_ = 0;
};

/// sum_i w_i phi_i(a(x_i)).
Complex evaluate(const FunctionalState& s, const MatrixFunction& a);

/// The point state  mu_x = mu (x) delta_x.
FunctionalState delta_embed(const AlgState& mu, std::size_t x, std::size_t point_count, const Algebra& alg);

/// delta_embed of the tracial state tr_v.
FunctionalState tracial_functional(const Algebra& alg, const std::vector<double>& v, std::size_t x,
                                   std::size_t point_count, const Tolerances& tol = {});

/// mu_x(a) computed entry by entry as  sum_{k,p,q} mu(e_{k,(p,q)}) a^k_{p,q}(x),
/// independently of apply_state.
Complex evaluate_by_units(const AlgState& mu, const MatrixFunction& a, std::size_t x);

}  // namespace qmetric
