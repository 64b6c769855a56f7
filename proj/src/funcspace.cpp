#include "qmetric/funcspace.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/errors.hpp"
#include "qmetric/kernels.hpp"

namespace qmetric {

void SeminormSpec::check() const {
  if (q == QKind::state && !state) throw PreconditionError("seminorm spec: q = state needs a state");
  if (q == QKind::conv_K && !(K > 0.0)) throw PreconditionError("seminorm spec: conv_K needs K > 0");
}

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::op: return "op";
    case NormKind::max: return "max";
    case NormKind::real_max: return "realmax";
  }
  return "?";
}

std::string to_string(QKind k) {
  switch (k) {
    case QKind::quotient_CX: return "cx";
    case QKind::quotient_C: return "c";
    case QKind::state: return "state";
    case QKind::conv: return "conv";
    case QKind::conv_K: return "convk";
  }
  return "?";
}

double lip_part(const MatrixFunction& a, NormKind norm_kind, const Tolerances& tol) {
  const auto& x = a.space();
  if (norm_kind == NormKind::real_max) {
    if (!a.is_self_adjoint(tol.sa)) throw PreconditionError("lip_part(realmax): function is not self-adjoint");
    const std::size_t w = a.algebra().sa_dimension();
    std::vector<double> coords;
    coords.reserve(w * a.size());
    for (const auto& v : a.values()) {
      const auto c = sa_coordinates(v);
      coords.insert(coords.end(), c.begin(), c.end());
    }
    return kernels::max_ratio_omp(coords, w, x);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      worst = std::max(worst, norm(a.at(i) - a.at(j), a.algebra(), norm_kind, tol) / x.d(i, j));
  return worst;
}

double q_term(const MatrixFunction& a, const SeminormSpec& spec, const Tolerances& tol) {
  spec.check();
  const Algebra& alg = a.algebra();
  switch (spec.q) {
    case QKind::quotient_CX: {
      double worst = 0.0;
      for (const auto& v : a.values()) worst = std::max(worst, dist_to_scalars(v, alg, spec.norm, tol));
      return worst;
    }
    case QKind::quotient_C:
      return pooled_scalar_fit(a.values(), alg, spec.norm, tol).distance;
    case QKind::state: {
      Complex mu = evaluate(*spec.state, a);
      if (a.is_self_adjoint(tol.sa)) mu = mu.real();
      const auto shift = AlgElement::scalar(alg, mu);
      double worst = 0.0;
      for (const auto& v : a.values()) worst = std::max(worst, norm(v - shift, alg, spec.norm, tol));
      return worst;
    }
    case QKind::conv:
    case QKind::conv_K: {
      if (!a.is_self_adjoint(tol.sa)) throw PreconditionError("q_term(conv): function is not self-adjoint");
      const double c = pooled_scalar_fit(a.values(), alg, NormKind::real_max, tol).distance;
      return spec.q == QKind::conv ? c : (2.0 / spec.K) * c;
    }
  }
  throw StructuralError("unknown q kind");
}

double lipnorm(const MatrixFunction& a, const SeminormSpec& spec, const Tolerances& tol) {
  return std::max(lip_part(a, spec.norm, tol), q_term(a, spec, tol));
}

MatrixFunction classical_embed(const FiniteMetricSpace& x, const std::vector<Complex>& f, const Algebra& alg) {
  if (f.size() != x.size()) throw StructuralError("classical_embed: need one value per point");
  std::vector<AlgElement> vals;
  vals.reserve(f.size());
  for (Complex z : f) vals.push_back(AlgElement::scalar(alg, z));
  return MatrixFunction(x, alg, std::move(vals));
}

double classical_lipschitz(const FiniteMetricSpace& x, const std::vector<double>& f) {
  if (f.size() != x.size()) throw StructuralError("classical_lipschitz: need one value per point");
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) worst = std::max(worst, std::abs(f[i] - f[j]) / x.d(i, j));
  return worst;
}

MatrixFunction jordan(const MatrixFunction& a, const MatrixFunction& b) {
  return Complex(0.5) * (a * b + b * a);
}

MatrixFunction lie(const MatrixFunction& a, const MatrixFunction& b) {
  return Complex(0.0, -0.5) * (a * b - b * a);
}

LeibnizReport quasi_leibniz_check(const MatrixFunction& a, const MatrixFunction& b, const SeminormSpec& spec,
                                  double C, double D, const Tolerances& tol) {
  if (!a.is_self_adjoint(tol.sa) || !b.is_self_adjoint(tol.sa))
    throw PreconditionError("quasi_leibniz_check: a and b must be self-adjoint");
  const double la = lipnorm(a, spec, tol);
  const double lb = lipnorm(b, spec, tol);
  LeibnizReport r;
  r.jordan_lhs = lipnorm(jordan(a, b), spec, tol);
  r.lie_lhs = lipnorm(lie(a, b), spec, tol);
  r.rhs = C * (sup_norm(a, tol) * lb + sup_norm(b, tol) * la) + D * la * lb;
  r.slack = r.rhs - std::max(r.jordan_lhs, r.lie_lhs);
  r.violated = r.slack < -1e-9;
  return r;
}

double leibniz_constant(const SeminormSpec& spec, const Algebra& alg) {
  const double m = static_cast<double>(alg.max_block());
  if (spec.q == QKind::conv || spec.q == QKind::conv_K) return std::sqrt(2.0) * m;
  // M ||.||_n <= ||.||_A <= N ||.||_n; M = 1 for all three norms
  double n_over_m = 1.0;
  if (spec.norm == NormKind::max) n_over_m = m;
  if (spec.norm == NormKind::real_max) n_over_m = std::sqrt(2.0) * m;
  return spec.q == QKind::state ? 2.0 * n_over_m : n_over_m;
}

}  // namespace qmetric
