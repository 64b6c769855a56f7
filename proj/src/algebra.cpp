#include "qmetric/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

// Real symmetric eigenvalues by cyclic Jacobi.  `a` is n x n row-major and is
// destroyed.  Stops once the off-diagonal Frobenius mass drops below
// tau * ||a||_F, then runs one more sweep to square the residual.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n, double tau) {
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  double total = 0.0;
  for (double v : a) total += v * v;
  const double target = tau * tau * total;

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * at(r, c) * at(r, c);
    return s;
  };

  bool extra_sweep_done = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = off_mass();
    if (off == 0.0) break;
    if (off <= target) {
      if (extra_sweep_done) break;
      extra_sweep_done = true;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

void require_sa(const AlgElement& a, const Tolerances& tol, const char* what) {
  if (!a.is_self_adjoint(tol.sa))
    throw PreconditionError(std::string(what) + ": element is not self-adjoint");
}

}  // namespace

// ---------------------------------------------------------------- CMatrix

CMatrix::CMatrix(std::size_t n, std::vector<Complex> row_major) : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw StructuralError("CMatrix: expected " + std::to_string(n * n) + " entries");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool CMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = r; c < n_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

Complex CMatrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.n_ != n_) throw StructuralError("CMatrix: size mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.n_ != n_) throw StructuralError("CMatrix: size mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.n_ != b.n_) throw StructuralError("CMatrix: size mismatch in *");
  const std::size_t n = a.n_;
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tau_eig) {
  const std::size_t n = h.size();
  if (n == 0) return {};
  if (n == 1) return {h(0, 0).real()};
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // symmetrise so small Hermitian defects do not bias the result
      const Complex v = 0.5 * (h(r, c) + std::conj(h(c, r)));
      a[r * m + c] = v.real();
      a[(r + n) * m + (c + n)] = v.real();
      a[(r + n) * m + c] = v.imag();
      a[r * m + (c + n)] = -v.imag();
    }
  const auto doubled = symmetric_eigenvalues(std::move(a), m, tau_eig);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(std::vector<std::size_t> block_sizes) : sizes_(std::move(block_sizes)) {
  if (sizes_.empty()) throw StructuralError("Algebra: block list is empty");
  for (std::size_t m : sizes_)
    if (m == 0) throw StructuralError("Algebra: block sizes must be >= 1");
  max_block_ = *std::max_element(sizes_.begin(), sizes_.end());
}

std::size_t Algebra::sa_dimension() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0},
                         [](std::size_t s, std::size_t m) { return s + m * m; });
}

// ---------------------------------------------------------------- AlgElement

AlgElement AlgElement::zero(const Algebra& alg) {
  std::vector<CMatrix> blocks;
  for (std::size_t m : alg.block_sizes()) blocks.emplace_back(m);
  return AlgElement(std::move(blocks));
}

AlgElement AlgElement::scalar(const Algebra& alg, Complex lambda) {
  std::vector<CMatrix> blocks;
  for (std::size_t m : alg.block_sizes()) blocks.push_back(CMatrix::identity(m) * lambda);
  return AlgElement(std::move(blocks));
}

bool AlgElement::conforms_to(const Algebra& alg) const {
  if (blocks_.size() != alg.block_count()) return false;
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].size() != alg.block_size(k)) return false;
  return true;
}

void AlgElement::require_shape(const Algebra& alg) const {
  if (blocks_.size() != alg.block_count())
    throw StructuralError("element has " + std::to_string(blocks_.size()) + " blocks, algebra has " +
                          std::to_string(alg.block_count()));
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].size() != alg.block_size(k))
      throw StructuralError("block " + std::to_string(k) + " is " + std::to_string(blocks_[k].size()) +
                            "x" + std::to_string(blocks_[k].size()) + ", algebra expects " +
                            std::to_string(alg.block_size(k)));
}

AlgElement AlgElement::adjoint() const {
  std::vector<CMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return AlgElement(std::move(out));
}

bool AlgElement::is_self_adjoint(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const CMatrix& b) { return b.is_hermitian(tol); });
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  if (o.blocks_.size() != blocks_.size()) throw StructuralError("AlgElement: block count mismatch");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  if (o.blocks_.size() != blocks_.size()) throw StructuralError("AlgElement: block count mismatch");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  if (a.blocks_.size() != b.blocks_.size()) throw StructuralError("AlgElement: block count mismatch");
  std::vector<CMatrix> out;
  out.reserve(a.blocks_.size());
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(a.blocks_[k] * b.blocks_[k]);
  return AlgElement(std::move(out));
}

// ---------------------------------------------------------------- norms

double op_norm(const AlgElement& a, const Algebra& alg, const Tolerances& tol) {
  a.require_shape(alg);
  double best = 0.0;
  for (const auto& blk : a.blocks()) {
    const auto eig = hermitian_eigenvalues(blk.adjoint() * blk, tol.eig);
    best = std::max(best, std::sqrt(std::max(0.0, eig.back())));
  }
  return best;
}

double max_norm(const AlgElement& a, const Algebra& alg) {
  a.require_shape(alg);
  double best = 0.0;
  for (const auto& blk : a.blocks())
    for (const Complex& z : blk.data()) best = std::max(best, std::abs(z));
  return best;
}

double real_max_norm(const AlgElement& a, const Algebra& alg, const Tolerances& tol) {
  a.require_shape(alg);
  require_sa(a, tol, "real_max_norm");
  double best = 0.0;
  for (const auto& blk : a.blocks())
    for (const Complex& z : blk.data()) best = std::max({best, std::abs(z.real()), std::abs(z.imag())});
  return best;
}

double norm(const AlgElement& a, const Algebra& alg, NormKind kind, const Tolerances& tol) {
  switch (kind) {
    case NormKind::op: return op_norm(a, alg, tol);
    case NormKind::max: return max_norm(a, alg);
    case NormKind::real_max: return real_max_norm(a, alg, tol);
  }
  throw StructuralError("unknown norm kind");
}

AlgElement matrix_unit(const Algebra& alg, std::size_t k, std::size_t p, std::size_t q) {
  if (k >= alg.block_count()) throw StructuralError("matrix_unit: block index out of range");
  const std::size_t m = alg.block_size(k);
  if (p < 1 || p > m || q < 1 || q > m) throw StructuralError("matrix_unit: entry index out of range");
  auto e = AlgElement::zero(alg);
  e.block(k)(p - 1, q - 1) = 1.0;
  return e;
}

// ---------------------------------------------------------------- scalar fits

Disc min_enclosing_disc(std::span<const Complex> input) {
  std::vector<Complex> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return {};
  if (pts.size() == 1) return {pts[0], 0.0};

  auto encloses = [&](const Disc& d) {
    const double slack = 1e-12 * std::max(1.0, d.radius);
    return std::all_of(pts.begin(), pts.end(),
                       [&](Complex z) { return std::abs(z - d.center) <= d.radius + slack; });
  };

  Disc best{0.0, std::numeric_limits<double>::infinity()};
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Disc d{0.5 * (pts[i] + pts[j]), 0.5 * std::abs(pts[i] - pts[j])};
      if (d.radius < best.radius && encloses(d)) best = d;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Complex b = pts[j] - pts[i];
        const Complex c = pts[k] - pts[i];
        const double den = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
        if (std::abs(den) < 1e-300) continue;  // collinear: covered by the pair discs
        const double bb = std::norm(b);
        const double cc = std::norm(c);
        const Complex u((c.imag() * bb - b.imag() * cc) / den, (b.real() * cc - c.real() * bb) / den);
        Disc d{pts[i] + u, std::abs(u)};
        if (d.radius < best.radius && encloses(d)) best = d;
      }
  return best;
}

ScalarFit pooled_scalar_fit(std::span<const AlgElement> family, const Algebra& alg, NormKind kind,
                            const Tolerances& tol) {
  if (family.empty()) return {};
  for (const auto& a : family) a.require_shape(alg);

  switch (kind) {
    case NormKind::op: {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& a : family) {
        require_sa(a, tol, "dist_to_scalars(op)");
        for (const auto& blk : a.blocks()) {
          const auto eig = hermitian_eigenvalues(blk, tol.eig);
          lo = std::min(lo, eig.front());
          hi = std::max(hi, eig.back());
        }
      }
      return {0.5 * (hi - lo), Complex(0.5 * (hi + lo), 0.0)};
    }
    case NormKind::max: {
      double fixed = 0.0;
      std::vector<Complex> diag;
      for (const auto& a : family)
        for (const auto& blk : a.blocks())
          for (std::size_t r = 0; r < blk.size(); ++r)
            for (std::size_t c = 0; c < blk.size(); ++c) {
              if (r == c)
                diag.push_back(blk(r, c));
              else
                fixed = std::max(fixed, std::abs(blk(r, c)));
            }
      const Disc d = min_enclosing_disc(diag);
      return {std::max(fixed, d.radius), d.center};
    }
    case NormKind::real_max: {
      double fixed = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& a : family) {
        require_sa(a, tol, "dist_to_scalars(real_max)");
        for (const auto& blk : a.blocks())
          for (std::size_t r = 0; r < blk.size(); ++r)
            for (std::size_t c = 0; c < blk.size(); ++c) {
              const Complex z = blk(r, c);
              if (r == c) {
                lo = std::min(lo, z.real());
                hi = std::max(hi, z.real());
                fixed = std::max(fixed, std::abs(z.imag()));
              } else {
                fixed = std::max({fixed, std::abs(z.real()), std::abs(z.imag())});
              }
            }
      }
      return {std::max(fixed, 0.5 * (hi - lo)), Complex(0.5 * (hi + lo), 0.0)};
    }
  }
  throw StructuralError("unknown norm kind");
}

double dist_to_scalars(const AlgElement& a, const Algebra& alg, NormKind kind, const Tolerances& tol) {
  return pooled_scalar_fit(std::span<const AlgElement>(&a, 1), alg, kind, tol).distance;
}

// ---------------------------------------------------------------- states

AlgState::AlgState(const Algebra& alg, std::vector<double> weights, std::vector<CMatrix> densities,
                   const Tolerances& tol)
    : weights_(std::move(weights)), densities_(std::move(densities)) {
  if (weights_.size() != alg.block_count() || densities_.size() != alg.block_count())
    throw StructuralError("AlgState: need one weight and one density per block");
  double total = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const double t = weights_[k];
    if (!(t >= -tol.state)) throw PreconditionError("AlgState: negative block weight");
    total += t;
    const CMatrix& rho = densities_[k];
    if (rho.size() != alg.block_size(k)) throw StructuralError("AlgState: density " + std::to_string(k) + " has wrong size");
    if (!rho.is_hermitian(tol.state))
      throw PreconditionError("AlgState: density " + std::to_string(k) + " is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol.state)
      throw PreconditionError("AlgState: density " + std::to_string(k) + " does not have trace 1");
    if (hermitian_eigenvalues(rho, tol.eig).front() < -tol.state)
      throw PreconditionError("AlgState: density " + std::to_string(k) + " is not positive semidefinite");
  }
  if (std::abs(total - 1.0) > tol.state) throw PreconditionError("AlgState: block weights do not sum to 1");
}

AlgState AlgState::tracial(const Algebra& alg, std::vector<double> v, const Tolerances& tol) {
  std::vector<CMatrix> dens;
  for (std::size_t m : alg.block_sizes()) dens.push_back(CMatrix::identity(m) * Complex(1.0 / double(m)));
  return AlgState(alg, std::move(v), std::move(dens), tol);
}

AlgState AlgState::vector_state(const Algebra& alg, std::size_t k, std::vector<Complex> v, const Tolerances& tol) {
  if (k >= alg.block_count()) throw StructuralError("vector_state: block index out of range");
  const std::size_t m = alg.block_size(k);
  if (v.size() != m) throw StructuralError("vector_state: vector length does not match block size");
  double nrm = 0.0;
  for (auto z : v) nrm += std::norm(z);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) throw PreconditionError("vector_state: zero vector");
  for (auto& z : v) z /= nrm;

  std::vector<double> w(alg.block_count(), 0.0);
  w[k] = 1.0;
  std::vector<CMatrix> dens;
  for (std::size_t j = 0; j < alg.block_count(); ++j) {
    const std::size_t mj = alg.block_size(j);
    if (j == k) {
      CMatrix rho(m);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) rho(r, c) = v[r] * std::conj(v[c]);
      dens.push_back(std::move(rho));
    } else {
      // weight 0; any density works, use the normalised trace
      dens.push_back(CMatrix::identity(mj) * Complex(1.0 / double(mj)));
    }
  }
  return AlgState(alg, std::move(w), std::move(dens), tol);
}

bool AlgState::conforms_to(const Algebra& alg) const {
  if (densities_.size() != alg.block_count()) return false;
  for (std::size_t k = 0; k < densities_.size(); ++k)
    if (densities_[k].size() != alg.block_size(k)) return false;
  return true;
}

Complex AlgState::unit_value(std::size_t k, std::size_t p, std::size_t q) const {
  if (k >= densities_.size()) throw StructuralError("unit_value: block index out of range");
  const std::size_t m = densities_[k].size();
  if (p < 1 || p > m || q < 1 || q > m) throw StructuralError("unit_value: entry index out of range");
  return weights_[k] * densities_[k](q - 1, p - 1);
}

Complex apply_state(const AlgState& phi, const AlgElement& a) {
  if (a.block_count() != phi.densities().size()) throw StructuralError("apply_state: block count mismatch");
  Complex total = 0.0;
  for (std::size_t k = 0; k < a.block_count(); ++k) {
    const CMatrix& rho = phi.densities()[k];
    const CMatrix& blk = a.block(k);
    if (rho.size() != blk.size()) throw StructuralError("apply_state: block size mismatch");
    if (phi.weights()[k] == 0.0) continue;
    total += phi.weights()[k] * (rho * blk).trace();
  }
  return total;
}

double k_mu(const AlgState& phi) {
  double s = 0.0;
  for (std::size_t k = 0; k < phi.densities().size(); ++k) {
    const CMatrix& rho = phi.densities()[k];
    double block = 0.0;
    for (const Complex& z : rho.data()) block += std::abs(z);
    s += phi.weights()[k] * block;
  }
  return s;
}

}  // namespace qmetric
