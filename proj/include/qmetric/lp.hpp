#pragma once

// Dense simplex for  max c.x  s.t.  A x <= b  with free x.

#include <cstddef>
#include <ostream>
#include <vector>

namespace qmetric {

struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> bounds;

  std::size_t variables() const { return objective.size(); }
  /// Throws StructuralError on ragged rows or non-finite data.
  void check() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double optimum = 0.0;
  std::vector<double> x;  // only for optimal
  std::size_t pivots = 0;
};

struct LpOptions {
  double tol = 1e-7;        // residual and optimum tolerance
  double pivot_eps = 1e-10; // smallest usable pivot / reduced cost
  bool parallel = true;     // OpenMP pivot kernel on large tableaus
};

/// Primal simplex on the split-variable standard form, Bland's rule, with a
/// one-auxiliary-variable phase 1 when some bound is negative.  The returned
/// point is re-checked: residuals <= tol, c.x within tol of the optimum.
LpResult solve(const LinearProgram& lp, const LpOptions& opt = {});

/// Splits the LP into blocks of variables linked by shared rows, solves each
/// block on its own and stitches the answers together.  Same contract as solve.
LpResult solve_separable(const LinearProgram& lp, const LpOptions& opt = {});

/// Debug dump: one CSV line per row, coefficients then bound.
void write_csv(std::ostream& os, const LinearProgram& lp);

}  // namespace qmetric
