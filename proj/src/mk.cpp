#include "qmetric/mk.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <string>

#include "qmetric/errors.hpp"
#include "qmetric/sampling.hpp"

namespace qmetric {

namespace {

// How a constraint |z| <= t on a complex off-diagonal entry becomes rows.
//   box:     |Re z| <= t and |Im z| <= t   (the real-max norm, exact)
//   outer16: 16 half-planes tangent to the disc (contains the disc)
//   inner16: the same polygon shrunk by cos(pi/16) (inside the disc)
enum class EntryModel { box, outer16, inner16 };

using Sparse = std::vector<std::pair<std::size_t, double>>;

struct BallLp {
  LinearProgram lp;
  std::size_t n = 0;  // points
  std::size_t w = 0;  // real coordinates per point
  std::size_t var(std::size_t point, std::size_t coord) const { return point * w + coord; }
};

class BallBuilder {
 public:
  BallBuilder(std::size_t vars) : vars_(vars) {}

  void add(const Sparse& e, double bound) {
    std::vector<double> row(vars_, 0.0);
    for (const auto& [j, c] : e) row[j] += c;
    rows_.push_back(std::move(row));
    bounds_.push_back(bound);
  }

  void real_entry(const Sparse& e, double t) {
    add(e, t);
    add(negate(e), t);
  }

  void complex_entry(const Sparse& re, const Sparse& im, double t, EntryModel model) {
    if (model == EntryModel::box) {
      real_entry(re, t);
      real_entry(im, t);
      return;
    }
    const double bound = model == EntryModel::outer16 ? t : t * std::cos(std::numbers::pi / 16.0);
    for (int k = 0; k < 16; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 16.0;
      Sparse e;
      for (const auto& [j, c] : re) e.emplace_back(j, std::cos(th) * c);
      for (const auto& [j, c] : im) e.emplace_back(j, std::sin(th) * c);
      add(e, bound);
    }
  }

  LinearProgram finish(std::vector<double> objective) {
    LinearProgram lp;
    lp.objective = std::move(objective);
    lp.rows = std::move(rows_);
    lp.bounds = std::move(bounds_);
    return lp;
  }

 private:
  static Sparse negate(Sparse e) {
    for (auto& [j, c] : e) c = -c;
    return e;
  }

  std::size_t vars_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> bounds_;
};

// Coefficients of a -> s(a) on the real coordinates, for self-adjoint a:
// diagonal units contribute mu(e_pp) a_pp, an off-diagonal pair p < q
// contributes 2 Re(mu(e_pq) a_pq).
std::vector<double> state_form(const FunctionalState& s, std::size_t n, const Algebra& alg) {
  const auto layout = sa_layout(alg);
  const std::size_t w = layout.size();
  std::vector<double> f(n * w, 0.0);
  for (const auto& t : s.terms()) {
    for (std::size_t c = 0; c < w; ++c) {
      const auto& e = layout[c];
      const Complex u = t.phi.unit_value(e.block, e.row + 1, e.col + 1);
      double coef;
      if (e.row == e.col)
        coef = u.real();
      else
        coef = e.imag ? -2.0 * u.imag() : 2.0 * u.real();
      f[t.point * w + c] += t.weight * coef;
    }
  }
  return f;
}

BallLp build_ball(const FiniteMetricSpace& x, const Algebra& alg, const SeminormSpec& spec, EntryModel model) {
  const auto layout = sa_layout(alg);
  BallLp b;
  b.n = x.size();
  b.w = layout.size();
  const std::size_t base = b.n * b.w;

  std::size_t extra = 0;
  switch (spec.q) {
    case QKind::conv:
    case QKind::conv_K:
    case QKind::quotient_C: extra = 1; break;
    case QKind::quotient_CX: extra = b.n; break;
    case QKind::state: extra = 0; break;
  }
  const std::size_t vars = base + extra;
  BallBuilder bb(vars);

  // Lipschitz part
  for (std::size_t i = 0; i < b.n; ++i)
    for (std::size_t j = i + 1; j < b.n; ++j) {
      const double d = x.d(i, j);
      for (std::size_t c = 0; c < b.w; ++c) {
        const auto& e = layout[c];
        const Sparse re{{b.var(i, c), 1.0}, {b.var(j, c), -1.0}};
        if (e.row == e.col) {
          bb.real_entry(re, d);
        } else if (!e.imag) {
          const Sparse im{{b.var(i, c + 1), 1.0}, {b.var(j, c + 1), -1.0}};
          bb.complex_entry(re, im, d, model);
        }
      }
    }

  // q-term; the conv variants are entrywise boxes whatever the norm
  const bool conv = spec.q == QKind::conv || spec.q == QKind::conv_K;
  const double qb = spec.q == QKind::conv_K ? 0.5 * spec.K : 1.0;
  const EntryModel qmodel = conv ? EntryModel::box : model;
  Sparse state_shift;
  if (spec.q == QKind::state) {
    const auto f = state_form(*spec.state, b.n, alg);
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0.0) state_shift.emplace_back(j, -f[j]);
  }
  for (std::size_t i = 0; i < b.n; ++i)
    for (std::size_t c = 0; c < b.w; ++c) {
      const auto& e = layout[c];
      if (e.row == e.col) {
        Sparse diag{{b.var(i, c), 1.0}};
        switch (spec.q) {
          case QKind::conv:
          case QKind::conv_K:
          case QKind::quotient_C: diag.emplace_back(base, -1.0); break;
          case QKind::quotient_CX: diag.emplace_back(base + i, -1.0); break;
          case QKind::state: diag.insert(diag.end(), state_shift.begin(), state_shift.end()); break;
        }
        bb.real_entry(diag, qb);
      } else if (!e.imag) {
        bb.complex_entry({{b.var(i, c), 1.0}}, {{b.var(i, c + 1), 1.0}}, qb, qmodel);
      }
    }

  b.lp = bb.finish(std::vector<double>(vars, 0.0));
  return b;
}

MatrixFunction to_function(const BallLp& b, const std::vector<double>& sol, const FiniteMetricSpace& x,
                           const Algebra& alg) {
  std::vector<AlgElement> vals;
  vals.reserve(b.n);
  for (std::size_t i = 0; i < b.n; ++i)
    vals.push_back(from_sa_coordinates(alg, std::span<const double>(sol.data() + i * b.w, b.w)));
  return MatrixFunction(x, alg, std::move(vals));
}

LpResult run(const BallLp& b, const MkOptions& opt) {
  auto res = solve_separable(b.lp, opt.lp);
  // a = 0 is feasible and the objective is constant along the kernel
  if (res.status != LpStatus::optimal) throw InvariantError("mk: Lip-ball LP did not reach an optimum");
  return res;
}

void check_states(const FunctionalState& mu, const FunctionalState& nu, const FiniteMetricSpace& x) {
  if (mu.point_count() != x.size() || nu.point_count() != x.size())
    throw StructuralError("mk: states do not live on the given space");
}

double optimum_for(const FunctionalState& mu, const FunctionalState& nu, const FiniteMetricSpace& x,
                   const Algebra& alg, const SeminormSpec& spec, EntryModel model, const MkOptions& opt,
                   std::size_t& pivots, std::vector<double>* sol, BallLp* keep) {
  BallLp b = build_ball(x, alg, spec, model);
  const auto fm = state_form(mu, b.n, alg);
  const auto fn = state_form(nu, b.n, alg);
  for (std::size_t j = 0; j < fm.size(); ++j) b.lp.objective[j] = fm[j] - fn[j];
  const auto res = run(b, opt);
  pivots += res.pivots;
  if (sol) *sol = res.x;
  if (keep) *keep = std::move(b);
  return std::max(0.0, res.optimum);
}

}  // namespace

MkResult mk_distance(const FunctionalState& mu, const FunctionalState& nu, const FiniteMetricSpace& x,
                     const Algebra& alg, const SeminormSpec& spec, const MkOptions& opt, const Tolerances& tol) {
  spec.check();
  check_states(mu, nu, x);
  if (spec.q == QKind::state && spec.state->point_count() != x.size())
    throw StructuralError("mk: spec state lives on a different space");
  MkResult r;

  if (spec.lp_exact()) {
    std::vector<double> sol;
    BallLp b;
    r.kind = MkResult::Kind::exact;
    r.value = optimum_for(mu, nu, x, alg, spec, EntryModel::box, opt, r.pivots, &sol, &b);
    r.lower = r.upper = r.value;
    auto wit = to_function(b, sol, x, alg);
    const double l = lipnorm(wit, spec, tol);
    if (l > 1.0 + tol.lp) throw InvariantError("mk: witness has Lip-norm " + std::to_string(l) + " > 1");
    const double gap = (evaluate(mu, wit) - evaluate(nu, wit)).real();
    if (std::abs(gap - r.value) > tol.lp)
      throw InvariantError("mk: witness attains " + std::to_string(gap) + ", LP reported " + std::to_string(r.value));
    r.witness = std::move(wit);
    return r;
  }

  r.kind = MkResult::Kind::interval;
  const double m = static_cast<double>(alg.max_block());
  if (!opt.refine) {
    // real-max ball contains the target ball; shrinking it by the norm
    // comparison constant puts it inside
    const double outer = optimum_for(mu, nu, x, alg, spec, EntryModel::box, opt, r.pivots, nullptr, nullptr);
    const double shrink = spec.norm == NormKind::op ? std::sqrt(2.0) * m : std::sqrt(2.0);
    r.upper = outer;
    r.lower = outer / shrink;
  } else {
    const double outer = optimum_for(mu, nu, x, alg, spec, EntryModel::outer16, opt, r.pivots, nullptr, nullptr);
    const double inner = optimum_for(mu, nu, x, alg, spec, EntryModel::inner16, opt, r.pivots, nullptr, nullptr);
    r.upper = outer;
    r.lower = spec.norm == NormKind::op ? inner / m : inner;
  }
  r.value = r.upper;
  return r;
}

std::vector<std::vector<MkResult>> mk_matrix(const std::vector<FunctionalState>& states, const FiniteMetricSpace& x,
                                             const Algebra& alg, const SeminormSpec& spec, const MkOptions& opt,
                                             const Tolerances& tol) {
  const std::size_t n = states.size();
  std::vector<std::vector<MkResult>> out(n, std::vector<MkResult>(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::exception_ptr> errors(pairs.size());
  MkOptions inner = opt;
  inner.lp.parallel = false;  // parallelism lives at the pair level here

  const auto np = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t p = 0; p < np; ++p) {
    const auto [i, j] = pairs[p];
    try {
      out[i][j] = mk_distance(states[i], states[j], x, alg, spec, inner, tol);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < n; ++i) {
    out[i][i].kind = spec.lp_exact() ? MkResult::Kind::exact : MkResult::Kind::interval;
    for (std::size_t j = i + 1; j < n; ++j) {
      out[j][i] = out[i][j];
      if (out[j][i].witness) *out[j][i].witness *= -1.0;
    }
  }
  return out;
}

double diameter_cap(const SeminormSpec& spec, const FiniteMetricSpace& x, const Algebra& alg) {
  const double m = static_cast<double>(alg.max_block());
  const double diam = diameter(x);
  // ||.||_A <= N ||.||_n
  double N = 1.0;
  if (spec.norm == NormKind::max) N = m;
  if (spec.norm == NormKind::real_max) N = std::sqrt(2.0) * m;
  switch (spec.q) {
    case QKind::quotient_C:
    case QKind::state: return 2.0 * N;
    case QKind::quotient_CX: {
      const bool scalar_algebra = alg.block_count() == 1 && alg.block_size(0) == 1;
      return scalar_algebra ? N * diam : 2.0 * N + N * diam;
    }
    case QKind::conv: return 2.0 * std::sqrt(2.0) * m;
    case QKind::conv_K: return spec.K * std::sqrt(2.0) * m;
  }
  throw StructuralError("unknown q kind");
}

DiameterReport mk_diameter_report(const std::vector<std::pair<FunctionalState, FunctionalState>>& pairs,
                                  const FiniteMetricSpace& x, const Algebra& alg, const SeminormSpec& spec,
                                  const MkOptions& opt, const Tolerances& tol) {
  DiameterReport rep;
  rep.cap = diameter_cap(spec, x, alg);
  for (const auto& [a, b] : pairs) {
    const auto r = mk_distance(a, b, x, alg, spec, opt, tol);
    rep.lower.push_back(r.lower);
    rep.upper.push_back(r.upper);
    rep.max_observed = std::max(rep.max_observed, r.upper);
    if (r.lower > rep.cap + tol.lp) ++rep.exceedances;
  }
  return rep;
}

double embed_upper_constant(const AlgState& mu) {
  double s = 0.0;
  for (std::size_t k = 0; k < mu.densities().size(); ++k) {
    const std::size_t m = mu.densities()[k].size();
    for (std::size_t p = 1; p <= m; ++p)
      for (std::size_t q = 1; q <= m; ++q) s += (p == q ? 1.0 : std::sqrt(2.0)) * std::abs(mu.unit_value(k, p, q));
  }
  return s;
}

double embed_lower_constant(const SeminormSpec& spec, double diam) {
  if (diam <= 0.0) return 1.0;
  switch (spec.q) {
    case QKind::quotient_CX: return 1.0;
    case QKind::quotient_C:
    case QKind::conv: return diam <= 1.0 ? 1.0 : 1.0 / diam;
    case QKind::state: return 2.0 * diam <= 1.0 ? 1.0 : 1.0 / (2.0 * diam);
    case QKind::conv_K: return std::min(1.0, spec.K / diam);
  }
  throw StructuralError("unknown q kind");
}

EmbedReport embed_check(const FiniteMetricSpace& x, const Algebra& alg, const AlgState& mu, const SeminormSpec& spec,
                        const MkOptions& opt, const Tolerances& tol) {
  if (!spec.lp_exact()) throw PreconditionError("embed_check: needs the real-max norm (exact LP)");
  EmbedReport rep;
  rep.upper_constant = embed_upper_constant(mu);
  rep.lower_constant = embed_lower_constant(spec, diameter(x));
  std::vector<FunctionalState> states;
  for (std::size_t i = 0; i < x.size(); ++i) states.push_back(delta_embed(mu, i, x.size(), alg));
  const auto mat = mk_matrix(states, x, alg, spec, opt, tol);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      EmbedPair p{i, j, x.d(i, j), mat[i][j].value};
      rep.max_abs_defect = std::max(rep.max_abs_defect, std::abs(p.mk - p.d));
      rep.max_rel_defect = std::max(rep.max_rel_defect, std::abs(p.mk / p.d - 1.0));
      if (p.mk > rep.upper_constant * p.d + tol.lp) ++rep.upper_violations;
      if (p.mk < rep.lower_constant * p.d - tol.lp) ++rep.lower_violations;
      rep.pairs.push_back(p);
    }
  return rep;
}

std::vector<MatrixFunction> sample_unit_ball(const FiniteMetricSpace& x, const Algebra& alg, const SeminormSpec& spec,
                                             std::size_t count, std::uint64_t seed, const MkOptions& opt,
                                             const Tolerances& tol) {
  spec.check();
  if (!spec.lp_exact()) throw PreconditionError("sample_unit_ball: needs the real-max norm (exact LP)");
  BallLp b = build_ball(x, alg, spec, EntryModel::box);
  const auto layout = sa_layout(alg);
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<MatrixFunction> out;
  for (std::size_t s = 0; s < count; ++s) {
    std::fill(b.lp.objective.begin(), b.lp.objective.end(), 0.0);
    for (std::size_t j = 0; j < b.n * b.w; ++j) b.lp.objective[j] = g(rng);
    // the ball contains the scalars; an objective that does not vanish on 1
    // is unbounded, so remove its component along the diagonal direction
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < b.n; ++i)
      for (std::size_t c = 0; c < b.w; ++c)
        if (layout[c].row == layout[c].col) {
          sum += b.lp.objective[b.var(i, c)];
          ++cnt;
        }
    for (std::size_t i = 0; i < b.n; ++i)
      for (std::size_t c = 0; c < b.w; ++c)
        if (layout[c].row == layout[c].col) b.lp.objective[b.var(i, c)] -= sum / static_cast<double>(cnt);
    const auto res = run(b, opt);
    auto f = to_function(b, res.x, x, alg);
    const double l = lipnorm(f, spec, tol);
    if (l > 1.0 + tol.lp) throw InvariantError("sample_unit_ball: vertex has Lip-norm " + std::to_string(l));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace qmetric
