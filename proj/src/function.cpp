#include "qmetric/function.hpp"

#include <algorithm>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

MatrixFunction::MatrixFunction(FiniteMetricSpace space, Algebra algebra, std::vector<AlgElement> values)
    : space_(std::move(space)), algebra_(std::move(algebra)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw StructuralError("MatrixFunction: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(space_.size()) + " points");
  for (const auto& v : values_) v.require_shape(algebra_);
}

MatrixFunction MatrixFunction::zero(FiniteMetricSpace space, Algebra algebra) {
  std::vector<AlgElement> vals(space.size(), AlgElement::zero(algebra));
  return MatrixFunction(std::move(space), std::move(algebra), std::move(vals));
}

bool MatrixFunction::is_self_adjoint(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [tol](const AlgElement& v) { return v.is_self_adjoint(tol); });
}

void MatrixFunction::require_same(const MatrixFunction& o) const {
  if (o.values_.size() != values_.size() || !(o.algebra_ == algebra_))
    throw StructuralError("MatrixFunction: operands live on different C(X, A)");
}

MatrixFunction& MatrixFunction::operator+=(const MatrixFunction& o) {
  require_same(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

MatrixFunction& MatrixFunction::operator-=(const MatrixFunction& o) {
  require_same(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

MatrixFunction& MatrixFunction::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

MatrixFunction operator*(const MatrixFunction& a, const MatrixFunction& b) {
  a.require_same(b);
  std::vector<AlgElement> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.values_[i] * b.values_[i]);
  return MatrixFunction(a.space_, a.algebra_, std::move(out));
}

std::vector<SaCoord> sa_layout(const Algebra& alg) {
  std::vector<SaCoord> out;
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    const std::size_t m = alg.block_size(k);
    for (std::size_t r = 0; r < m; ++r) {
      out.push_back({k, r, r, false});
      for (std::size_t c = r + 1; c < m; ++c) {
        out.push_back({k, r, c, false});
        out.push_back({k, r, c, true});
      }
    }
  }
  return out;
}

std::vector<double> sa_coordinates(const AlgElement& a) {
  std::vector<double> out;
  for (const auto& blk : a.blocks())
    for (std::size_t r = 0; r < blk.size(); ++r) {
      out.push_back(blk(r, r).real());
      for (std::size_t c = r + 1; c < blk.size(); ++c) {
        out.push_back(blk(r, c).real());
        out.push_back(blk(r, c).imag());
      }
    }
  return out;
}

AlgElement from_sa_coordinates(const Algebra& alg, std::span<const double> c) {
  if (c.size() != alg.sa_dimension()) throw StructuralError("from_sa_coordinates: wrong coordinate count");
  auto a = AlgElement::zero(alg);
  std::size_t i = 0;
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    CMatrix& blk = a.block(k);
    for (std::size_t r = 0; r < blk.size(); ++r) {
      blk(r, r) = c[i++];
      for (std::size_t col = r + 1; col < blk.size(); ++col) {
        const Complex z(c[i], c[i + 1]);
        i += 2;
        blk(r, col) = z;
        blk(col, r) = std::conj(z);
      }
    }
  }
  return a;
}

double sup_norm(const MatrixFunction& a, const Tolerances& tol) {
  double best = 0.0;
  for (const auto& v : a.values()) best = std::max(best, op_norm(v, a.algebra(), tol));
  return best;
}

}  // namespace qmetric
