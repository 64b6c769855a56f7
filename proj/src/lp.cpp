#include "qmetric/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmetric/errors.hpp"
#include "qmetric/kernels.hpp"

namespace qmetric {

void LinearProgram::check() const {
  if (rows.size() != bounds.size()) throw StructuralError("LP: one bound per row required");
  for (double v : objective)
    if (!std::isfinite(v)) throw StructuralError("LP: non-finite objective coefficient");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != objective.size())
      throw StructuralError("LP: row " + std::to_string(i) + " has the wrong length");
    for (double v : rows[i])
      if (!std::isfinite(v)) throw StructuralError("LP: non-finite coefficient in row " + std::to_string(i));
    if (!std::isfinite(bounds[i])) throw StructuralError("LP: non-finite bound in row " + std::to_string(i));
  }
}

namespace {

// Condensed tableau.  Every row reads  basic + sum_j T[i][j] * nonbasic_j = rhs,
// the objective rows included (their "basic" is z, which never leaves).
// Variable labels: 2j / 2j+1 are the positive / negative parts of x_j, then
// one slack per constraint, then the phase-1 auxiliary.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const LpOptions& opt) : opt_(opt), n_(lp.variables()), m_(lp.rows.size()) {
    aux_ = 2 * n_ + m_;
    const bool phase1 = std::any_of(lp.bounds.begin(), lp.bounds.end(), [](double b) { return b < 0.0; });
    ncol_ = 2 * n_ + (phase1 ? 1 : 0);
    cols_ = ncol_ + 1;
    rows_ = m_ + (phase1 ? 2 : 1);
    t_.assign(rows_ * cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        at(i, 2 * j) = lp.rows[i][j];
        at(i, 2 * j + 1) = -lp.rows[i][j];
      }
      if (phase1) at(i, 2 * n_) = -1.0;
      at(i, ncol_) = lp.bounds[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      at(m_, 2 * j) = -lp.objective[j];
      at(m_, 2 * j + 1) = lp.objective[j];
    }
    if (phase1) at(m_ + 1, 2 * n_) = 1.0;  // maximise -x0
    nonbasic_.resize(ncol_);
    std::iota(nonbasic_.begin(), nonbasic_.begin() + 2 * n_, std::size_t{0});
    if (phase1) nonbasic_[2 * n_] = aux_;
    basic_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = 2 * n_ + i;
  }

  bool has_phase1() const { return rows_ == m_ + 2; }

  // Returns false if the phase-1 optimum is negative (infeasible).
  bool run_phase1() {
    const std::size_t obj = m_ + 1;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (at(i, ncol_) < at(r, ncol_)) r = i;
    pivot(r, ncol_ - 1);
    if (iterate(obj) != Outcome::optimal) throw InvariantError("LP phase 1 cannot be unbounded");
    if (at(obj, ncol_) < -opt_.tol) return false;

    // drive the auxiliary out of the basis if it is still there at level 0
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] != aux_) continue;
      std::size_t best = ncol_;
      for (std::size_t j = 0; j < ncol_; ++j)
        if (nonbasic_[j] != aux_ && std::abs(at(i, j)) > opt_.pivot_eps &&
            (best == ncol_ || std::abs(at(i, j)) > std::abs(at(i, best))))
          best = j;
      if (best == ncol_) throw InvariantError("LP phase 1: auxiliary row is empty");
      pivot(i, best);
    }
    drop_aux();
    return true;
  }

  enum class Outcome { optimal, unbounded };

  Outcome run_phase2() { return iterate(m_); }

  double optimum() const { return at(m_, ncol_); }
  std::size_t pivots() const { return pivots_; }

  std::vector<double> point() const {
    std::vector<double> val(2 * n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] < 2 * n_) val[basic_[i]] = at(i, ncol_);
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = val[2 * j] - val[2 * j + 1];
    return x;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    if (opt_.parallel && rows_ * cols_ >= (std::size_t{1} << 16))
      kernels::pivot_omp(t_, rows_, cols_, r, s);
    else
      kernels::pivot_serial(t_, rows_, cols_, r, s);
    std::swap(basic_[r], nonbasic_[s]);
    ++pivots_;
  }

  // Bland: lowest-label improving column, then lowest-label leaving row among ties.
  Outcome iterate(std::size_t obj) {
    for (;;) {
      std::size_t s = ncol_;
      for (std::size_t j = 0; j < ncol_; ++j)
        if (at(obj, j) < -opt_.pivot_eps && (s == ncol_ || nonbasic_[j] < nonbasic_[s])) s = j;
      if (s == ncol_) return Outcome::optimal;

      std::size_t r = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, s);
        if (a <= opt_.pivot_eps) continue;
        const double ratio = std::max(0.0, at(i, ncol_)) / a;
        const double tie = 1e-12 * std::max(1.0, best == std::numeric_limits<double>::infinity() ? 1.0 : best);
        if (r == m_ || ratio < best - tie) {
          best = ratio;
          r = i;
        } else if (ratio <= best + tie && basic_[i] < basic_[r]) {
          best = std::min(best, ratio);
          r = i;
        }
      }
      if (r == m_) return Outcome::unbounded;
      pivot(r, s);
    }
  }

  void drop_aux() {
    const auto it = std::find(nonbasic_.begin(), nonbasic_.end(), aux_);
    const std::size_t drop = static_cast<std::size_t>(it - nonbasic_.begin());
    const std::size_t new_cols = cols_ - 1;
    const std::size_t new_rows = m_ + 1;
    std::vector<double> t(new_rows * new_cols);
    for (std::size_t i = 0; i < new_rows; ++i)
      for (std::size_t j = 0, k = 0; j < cols_; ++j)
        if (j != drop) t[i * new_cols + k++] = at(i, j);
    t_ = std::move(t);
    nonbasic_.erase(it);
    cols_ = new_cols;
    ncol_ = new_cols - 1;
    rows_ = new_rows;
  }

  LpOptions opt_;
  std::size_t n_, m_;
  std::size_t aux_ = 0;
  std::size_t ncol_ = 0, cols_ = 0, rows_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basic_, nonbasic_;
  std::size_t pivots_ = 0;
};

void verify(const LinearProgram& lp, const LpResult& res, const LpOptions& opt) {
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < lp.variables(); ++j) lhs += lp.rows[i][j] * res.x[j];
    if (lhs - lp.bounds[i] > opt.tol)
      throw InvariantError("LP: returned point violates row " + std::to_string(i) + " by " +
                           std::to_string(lhs - lp.bounds[i]));
  }
  double val = 0.0;
  for (std::size_t j = 0; j < lp.variables(); ++j) val += lp.objective[j] * res.x[j];
  if (std::abs(val - res.optimum) > opt.tol * std::max(1.0, std::abs(res.optimum)))
    throw InvariantError("LP: returned point does not attain the reported optimum");
}

}  // namespace

LpResult solve(const LinearProgram& lp, const LpOptions& opt) {
  lp.check();
  LpResult res;
  if (lp.rows.empty()) {
    const bool zero = std::all_of(lp.objective.begin(), lp.objective.end(), [](double c) { return c == 0.0; });
    res.status = zero ? LpStatus::optimal : LpStatus::unbounded;
    if (zero) res.x.assign(lp.variables(), 0.0);
    return res;
  }
  Tableau tab(lp, opt);
  if (tab.has_phase1() && !tab.run_phase1()) {
    res.status = LpStatus::infeasible;
    res.pivots = tab.pivots();
    return res;
  }
  const auto out = tab.run_phase2();
  res.pivots = tab.pivots();
  if (out == Tableau::Outcome::unbounded) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.optimum = tab.optimum();
  res.x = tab.point();
  verify(lp, res, opt);
  return res;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

LpResult solve_separable(const LinearProgram& lp, const LpOptions& opt) {
  lp.check();
  const std::size_t n = lp.variables();
  UnionFind uf(n);
  std::vector<std::size_t> row_first(lp.rows.size(), n);
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lp.rows[i][j] != 0.0) {
        if (row_first[i] == n)
          row_first[i] = j;
        else
          uf.unite(row_first[i], j);
      }

  LpResult res;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (row_first[i] == n && lp.bounds[i] < -opt.tol) {
      res.status = LpStatus::infeasible;
      res.x.clear();
      return res;
    }

  std::vector<std::vector<std::size_t>> comp_vars(n), comp_rows(n);
  std::vector<bool> constrained(n, false);
  for (std::size_t j = 0; j < n; ++j) comp_vars[uf.find(j)].push_back(j);
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (row_first[i] != n) {
      const std::size_t c = uf.find(row_first[i]);
      comp_rows[c].push_back(i);
      constrained[c] = true;
    }

  bool unbounded = false;
  for (std::size_t c = 0; c < n; ++c) {
    const auto& vars = comp_vars[c];
    if (vars.empty()) continue;
    const bool zero_obj = std::all_of(vars.begin(), vars.end(), [&](std::size_t j) { return lp.objective[j] == 0.0; });
    const auto& rows = comp_rows[c];
    const bool origin_ok = std::all_of(rows.begin(), rows.end(), [&](std::size_t i) { return lp.bounds[i] >= 0.0; });
    if (zero_obj && origin_ok) continue;  // x = 0 is optimal
    if (!constrained[c]) {
      unbounded = true;
      continue;
    }
    LinearProgram sub;
    for (std::size_t j : vars) sub.objective.push_back(lp.objective[j]);
    for (std::size_t i : rows) {
      std::vector<double> row;
      row.reserve(vars.size());
      for (std::size_t j : vars) row.push_back(lp.rows[i][j]);
      sub.rows.push_back(std::move(row));
      sub.bounds.push_back(lp.bounds[i]);
    }
    const LpResult part = solve(sub, opt);
    res.pivots += part.pivots;
    if (part.status == LpStatus::infeasible) {
      res.status = LpStatus::infeasible;
      res.x.clear();
      return res;
    }
    if (part.status == LpStatus::unbounded) {
      unbounded = true;
      continue;
    }
    res.optimum += part.optimum;
    for (std::size_t k = 0; k < vars.size(); ++k) res.x[vars[k]] = part.x[k];
  }
  if (unbounded) {
    res.status = LpStatus::unbounded;
    res.x.clear();
    res.optimum = 0.0;
    return res;
  }
  res.status = LpStatus::optimal;
  verify(lp, res, opt);
  return res;
}

void write_csv(std::ostream& os, const LinearProgram& lp) {
  const auto old = os.precision(17);
  os << "objective";
  for (double c : lp.objective) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    os << "row" << i;
    for (double v : lp.rows[i]) os << ',' << v;
    os << ',' << lp.bounds[i] << '\n';
  }
  os.precision(old);
}

}  // namespace qmetric
