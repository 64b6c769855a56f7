#pragma once

// Elements of C(X, A) for a finite metric space X: one algebra element per point.

#include <span>
#include <vector>

#include "qmetric/algebra.hpp"
#include "qmetric/metric.hpp"

namespace qmetric {

class MatrixFunction {
 public:
  /// Throws StructuralError unless there is one well-formed value per point.
  MatrixFunction(FiniteMetricSpace space, Algebra algebra, std::vector<AlgElement> values);

  /// Every point mapped to zero.
  static MatrixFunction zero(FiniteMetricSpace space, Algebra algebra);

  const FiniteMetricSpace& space() const { return space_; }
  const Algebra& algebra() const { return algebra_; }
  const std::vector<AlgElement>& values() const { return values_; }
  const AlgElement& at(std::size_t x) const { return values_.at(x); }
  AlgElement& at(std::size_t x) { return values_.at(x); }
  std::size_t size() const { return values_.size(); }

  bool is_self_adjoint(double tol) const;

  MatrixFunction& operator+=(const MatrixFunction& o);
  MatrixFunction& operator-=(const MatrixFunction& o);
  MatrixFunction& operator*=(Complex s);
  friend MatrixFunction operator+(MatrixFunction a, const MatrixFunction& b) { return a += b; }
  friend MatrixFunction operator-(MatrixFunction a, const MatrixFunction& b) { return a -= b; }
  friend MatrixFunction operator*(Complex s, MatrixFunction a) { return a *= s; }
  /// Pointwise product.
  friend MatrixFunction operator*(const MatrixFunction& a, const MatrixFunction& b);

 private:
  void require_same(const MatrixFunction& o) const;

  FiniteMetricSpace space_;
  Algebra algebra_;
  std::vector<AlgElement> values_;
};

/// Real coordinates of a self-adjoint element: per block, row by row over the
/// upper triangle, Re of each diagonal entry and Re, Im of each entry above it.
struct SaCoord {
  std::size_t block;
  std::size_t row;  // 0-based
  std::size_t col;  // 0-based, col >= row
  bool imag;
};
std::vector<SaCoord> sa_layout(const Algebra& alg);
std::vector<double> sa_coordinates(const AlgElement& a);
/// Inverse of sa_coordinates; the lower triangle is filled by conjugation.
AlgElement from_sa_coordinates(const Algebra& alg, std::span<const double> c);

/// sup_x ||a(x)||_A, the norm of C(X, A).
double sup_norm(const MatrixFunction& a, const Tolerances& tol = {});

}  // namespace qmetric
