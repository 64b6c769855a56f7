#include "qmetric/states.hpp"

#include <cmath>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

FunctionalState::FunctionalState(std::vector<StateTerm> terms, std::size_t point_count, const Algebra& alg,
                                 const Tolerances& tol)
    : terms_(std::move(terms)), point_count_(point_count) {
  if (terms_.empty()) throw PreconditionError("FunctionalState: no terms");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (!(t.weight >= -tol.state) || t.weight > 1.0 + tol.state)
      throw PreconditionError("FunctionalState: term weight outside [0, 1]");
    if (t.point >= point_count_)
      throw StructuralError("FunctionalState: point index " + std::to_string(t.point) + " out of range");
    if (!t.phi.conforms_to(alg)) throw StructuralError("FunctionalState: algebra state has the wrong shape");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > tol.state) throw PreconditionError("FunctionalState: weights do not sum to 1");
}

Complex evaluate(const FunctionalState& s, const MatrixFunction& a) {
  if (s.point_count() != a.size()) throw StructuralError("evaluate: state and function live on different spaces");
  Complex total = 0.0;
  for (const auto& t : s.terms()) total += t.weight * apply_state(t.phi, a.at(t.point));
  return total;
}

FunctionalState delta_embed(const AlgState& mu, std::size_t x, std::size_t point_count, const Algebra& alg) {
  return FunctionalState({StateTerm{1.0, x, mu}}, point_count, alg);
}

FunctionalState tracial_functional(const Algebra& alg, const std::vector<double>& v, std::size_t x,
                                   std::size_t point_count, const Tolerances& tol) {
  return delta_embed(AlgState::tracial(alg, v, tol), x, point_count, alg);
}

Complex evaluate_by_units(const AlgState& mu, const MatrixFunction& a, std::size_t x) {
  const AlgElement& v = a.at(x);
  if (!mu.conforms_to(a.algebra())) throw StructuralError("evaluate_by_units: state does not fit the algebra");
  Complex total = 0.0;
  for (std::size_t k = 0; k < v.block_count(); ++k) {
    const std::size_t m = v.block(k).size();
    for (std::size_t p = 1; p <= m; ++p)
      for (std::size_t q = 1; q <= m; ++q) total += mu.unit_value(k, p, q) * v.block(k)(p - 1, q - 1);
  }
  return total;
}

}  // namespace qmetric
