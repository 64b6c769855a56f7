#pragma once

#include <string_view>

namespace qmetric {

struct Tolerances {
  double sa = 1e-9;       // self-adjointness
  double state = 1e-8;    // state validity (weights, trace, positivity)
  double eig = 1e-11;     // relative off-diagonal mass at which Jacobi stops
  double metric = 1e-9;   // metric axioms
  double lp = 1e-7;       // LP optimum and residuals
};

/// Parses "sa=1e-9,lp=1e-6" style overrides on top of `base`.
/// Unknown keys or malformed numbers throw std::invalid_argument.
Tolerances parse_tolerances(std::string_view spec, Tolerances base = {});

}  // namespace qmetric
