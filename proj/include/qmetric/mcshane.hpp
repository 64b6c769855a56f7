#pragma once

// Lipschitz extension of real functions off a subset, keeping the constant
// and the range.

#include <vector>

#include "qmetric/metric.hpp"

namespace qmetric {

struct ExtensionProblem {
  FiniteMetricSpace space;
  std::vector<std::size_t> subset;
  std::vector<double> values;  // one per subset point
  double K = 1.0;
};

/// f(z) = clamp(min_y f(y) + K d(z, y), [min f, max f]), equal to the input on
/// the subset.  Throws PreconditionError naming a pair if the data is not
/// K-Lipschitz (within tol.sa).
std::vector<double> extend(const ExtensionProblem& p, const Tolerances& tol = {});

}  // namespace qmetric
