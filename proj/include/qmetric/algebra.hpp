#pragma once

// Finite-dimensional C*-algebras  M_{m_0}(C) + ... + M_{m_n}(C): elements,
// the three norms used throughout the library, matrix units, and states.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qmetric/tolerances.hpp"

namespace qmetric {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}
  CMatrix(std::size_t n, std::vector<Complex> row_major);

  static CMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  std::span<const Complex> data() const { return data_; }

  CMatrix adjoint() const;
  bool is_hermitian(double tol) const;
  Complex trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi on its real
/// 2n x 2n symmetric embedding [[Re, -Im], [Im, Re]].
std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tau_eig = Tolerances{}.eig);

/// The block-size list of  M_{m_0}(C) + ... + M_{m_n}(C).
class Algebra {
 public:
  explicit Algebra(std::vector<std::size_t> block_sizes);

  const std::vector<std::size_t>& block_sizes() const { return sizes_; }
  std::size_t block_count() const { return sizes_.size(); }
  std::size_t block_size(std::size_t k) const { return sizes_.at(k); }
  /// m_A, the largest block size.
  std::size_t max_block() const { return max_block_; }
  /// Real dimension of the self-adjoint part (sum of m_k^2).
  std::size_t sa_dimension() const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::size_t max_block_ = 0;
};

/// One matrix per block.
class AlgElement {
 public:
  AlgElement() = default;
  explicit AlgElement(std::vector<CMatrix> blocks) : blocks_(std::move(blocks)) {}

  static AlgElement zero(const Algebra& alg);
  static AlgElement scalar(const Algebra& alg, Complex lambda);
  static AlgElement identity(const Algebra& alg) { return scalar(alg, 1.0); }

  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(std::size_t k) const { return blocks_.at(k); }
  CMatrix& block(std::size_t k) { return blocks_.at(k); }
  std::size_t block_count() const { return blocks_.size(); }

  bool conforms_to(const Algebra& alg) const;
  /// Throws StructuralError unless the element has the algebra's shape.
  void require_shape(const Algebra& alg) const;

  AlgElement adjoint() const;
  bool is_self_adjoint(double tol) const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(Complex s);

  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(AlgElement a, Complex s) { return a *= s; }
  friend AlgElement operator*(Complex s, AlgElement a) { return a *= s; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend bool operator==(const AlgElement&, const AlgElement&) = default;

 private:
  std::vector<CMatrix> blocks_;
};

enum class NormKind { op, max, real_max };

/// C*-norm: largest singular value over all blocks.
double op_norm(const AlgElement& a, const Algebra& alg, const Tolerances& tol = {});
/// Largest complex modulus over all entries of all blocks.
double max_norm(const AlgElement& a, const Algebra& alg);
/// Largest of |Re| and |Im| over all entries; a norm only on self-adjoint elements.
double real_max_norm(const AlgElement& a, const Algebra& alg, const Tolerances& tol = {});
double norm(const AlgElement& a, const Algebra& alg, NormKind kind, const Tolerances& tol = {});

/// Matrix unit e_{k,(p,q)}; k is 0-based, p and q are 1-based.
AlgElement matrix_unit(const Algebra& alg, std::size_t k, std::size_t p, std::size_t q);

/// Best single-scalar approximation: inf over lambda of max_i ||a_i - lambda 1||.
struct ScalarFit {
  double distance = 0.0;
  Complex center{};
};

/// Pooled scalar fit over a family of elements sharing one scalar.
/// op: self-adjoint inputs, spectral closed form.  max: enclosing circle of the
/// diagonal entries.  real_max: self-adjoint inputs, real diagonal spread.
ScalarFit pooled_scalar_fit(std::span<const AlgElement> family, const Algebra& alg, NormKind kind,
                            const Tolerances& tol = {});

double dist_to_scalars(const AlgElement& a, const Algebra& alg, NormKind kind, const Tolerances& tol = {});

/// Smallest disc containing every point, by exhaustive 2- and 3-point support search.
struct Disc {
  Complex center{};
  double radius = 0.0;
};
Disc min_enclosing_disc(std::span<const Complex> points);

/// A state on the algebra: block weights t_k and one density matrix per block.
class AlgState {
 public:
  AlgState(const Algebra& alg, std::vector<double> weights, std::vector<CMatrix> densities,
           const Tolerances& tol = {});

  /// tr_v = sum_k v_k tr_{m_k}.
  static AlgState tracial(const Algebra& alg, std::vector<double> v, const Tolerances& tol = {});
  /// Vector state of a unit vector in block k; the vector is normalised.
  static AlgState vector_state(const Algebra& alg, std::size_t k, std::vector<Complex> v,
                               const Tolerances& tol = {});

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<CMatrix>& densities() const { return densities_; }
  bool conforms_to(const Algebra& alg) const;

  /// mu(e_{k,(p,q)}) with 1-based p, q; equals t_k * rho_k(q, p).
  Complex unit_value(std::size_t k, std::size_t p, std::size_t q) const;

 private:
  std::vector<double> weights_;
  std::vector<CMatrix> densities_;
};

/// phi(a) = sum_k t_k Tr(rho_k a^k).
Complex apply_state(const AlgState& phi, const AlgElement& a);

/// k_mu = sum over matrix units of |mu(e_{k,(p,q)})|.
double k_mu(const AlgState& phi);

}  // namespace qmetric
