#pragma once

// The seminorm family on C(X, A): Lipschitz part, the q-terms and their max.

#include <optional>
#include <string>
#include <vector>

#include "qmetric/function.hpp"
#include "qmetric/states.hpp"

namespace qmetric {

enum class QKind { quotient_CX, quotient_C, state, conv, conv_K };

struct SeminormSpec {
  NormKind norm = NormKind::real_max;
  QKind q = QKind::conv;
  std::optional<FunctionalState> state;  // required for QKind::state
  double K = 1.0;                        // used by QKind::conv_K

  /// Throws PreconditionError on a missing state or K <= 0.
  void check() const;
  /// True when mk under this spec is an exact LP.
  bool lp_exact() const { return norm == NormKind::real_max; }
};

std::string to_string(NormKind k);
std::string to_string(QKind k);

/// max over pairs x != y of ||a(x) - a(y)||_n / d(x, y); 0 on one point.
double lip_part(const MatrixFunction& a, NormKind norm, const Tolerances& tol = {});

double q_term(const MatrixFunction& a, const SeminormSpec& spec, const Tolerances& tol = {});

/// max(lip_part, q_term).
double lipnorm(const MatrixFunction& a, const SeminormSpec& spec, const Tolerances& tol = {});

/// x -> f(x) 1_A.
MatrixFunction classical_embed(const FiniteMetricSpace& x, const std::vector<Complex>& f, const Algebra& alg);

/// Plain Lipschitz constant of a scalar function, by direct pair scan.
double classical_lipschitz(const FiniteMetricSpace& x, const std::vector<double>& f);

struct LeibnizReport {
  double jordan_lhs = 0.0;  // L(a o b)
  double lie_lhs = 0.0;     // L({a, b})
  double rhs = 0.0;         // C(|a| L(b) + |b| L(a)) + D L(a) L(b)
  double slack = 0.0;       // rhs - max(lhs)
  bool violated = false;
};

/// Jordan product (ab + ba)/2.
MatrixFunction jordan(const MatrixFunction& a, const MatrixFunction& b);
/// Lie product (ab - ba)/(2i).
MatrixFunction lie(const MatrixFunction& a, const MatrixFunction& b);

LeibnizReport quasi_leibniz_check(const MatrixFunction& a, const MatrixFunction& b, const SeminormSpec& spec,
                                  double C, double D, const Tolerances& tol = {});

/// The quasi-Leibniz constant C (with D = 0) that the theory gives for `spec`:
/// N/M for the norm-based q-terms, sqrt(2) m_A for the conv variants.
double leibniz_constant(const SeminormSpec& spec, const Algebra& alg);

}  // namespace qmetric
