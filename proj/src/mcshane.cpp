#include "qmetric/mcshane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

std::vector<double> extend(const ExtensionProblem& p, const Tolerances& tol) {
  const auto& x = p.space;
  if (p.subset.empty()) throw PreconditionError("extend: subset is empty");
  if (p.values.size() != p.subset.size()) throw StructuralError("extend: need one value per subset point");
  if (!(p.K >= 0.0) || !std::isfinite(p.K)) throw PreconditionError("extend: K must be finite and >= 0");
  for (std::size_t s : p.subset)
    if (s >= x.size()) throw StructuralError("extend: subset index " + std::to_string(s) + " out of range");

  for (std::size_t a = 0; a < p.subset.size(); ++a)
    for (std::size_t b = a + 1; b < p.subset.size(); ++b) {
      const double gap = std::abs(p.values[a] - p.values[b]);
      const double room = p.K * x.d(p.subset[a], p.subset[b]);
      if (gap > room + tol.sa)
        throw PreconditionError("extend: values at " + x.labels()[p.subset[a]] + " and " + x.labels()[p.subset[b]] +
                                " differ by " + std::to_string(gap) + " > K d = " + std::to_string(room));
    }

  const auto [lo_it, hi_it] = std::minmax_element(p.values.begin(), p.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::vector<double> out(x.size());
  for (std::size_t z = 0; z < x.size(); ++z) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < p.subset.size(); ++a) best = std::min(best, p.values[a] + p.K * x.d(z, p.subset[a]));
    out[z] = std::clamp(best, lo, hi);
  }
  // the formula already returns f on the subset up to rounding; pin it exactly
  for (std::size_t a = 0; a < p.subset.size(); ++a) out[p.subset[a]] = p.values[a];
  return out;
}

}  // namespace qmetric
