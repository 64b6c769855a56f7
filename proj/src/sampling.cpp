#include "qmetric/sampling.hpp"

#include "qmetric/generators.hpp"

namespace qmetric {

namespace {
double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
}  // namespace

std::vector<double> random_probability(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = e(rng));
  for (auto& x : v) x /= s;
  return v;
}

Algebra random_algebra(std::size_t max_blocks, std::size_t max_size, Rng& rng) {
  std::vector<std::size_t> sizes(pick(rng, 1, max_blocks));
  for (auto& m : sizes) m = pick(rng, 1, max_size);
  return Algebra(sizes);
}

AlgElement random_element(const Algebra& alg, Rng& rng) {
  auto a = AlgElement::zero(alg);
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    CMatrix& b = a.block(k);
    for (std::size_t r = 0; r < b.size(); ++r)
      for (std::size_t c = 0; c < b.size(); ++c) b(r, c) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  }
  return a;
}

AlgElement random_self_adjoint(const Algebra& alg, Rng& rng) {
  auto a = AlgElement::zero(alg);
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    CMatrix& b = a.block(k);
    for (std::size_t r = 0; r < b.size(); ++r) {
      b(r, r) = uniform(rng, -1, 1);
      for (std::size_t c = r + 1; c < b.size(); ++c) {
        b(r, c) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
        b(c, r) = std::conj(b(r, c));
      }
    }
  }
  return a;
}

AlgState random_alg_state(const Algebra& alg, Rng& rng) {
  auto w = random_probability(alg.block_count(), rng);
  std::vector<CMatrix> dens;
  const auto g = random_element(alg, rng);
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    CMatrix rho = g.block(k) * g.block(k).adjoint();
    rho *= 1.0 / rho.trace().real();
    // exact Hermitian symmetry for the validator
    for (std::size_t r = 0; r < rho.size(); ++r) {
      rho(r, r) = rho(r, r).real();
      for (std::size_t c = r + 1; c < rho.size(); ++c) rho(c, r) = std::conj(rho(r, c));
    }
    dens.push_back(std::move(rho));
  }
  return AlgState(alg, std::move(w), std::move(dens));
}

AlgState random_vector_state(const Algebra& alg, Rng& rng) {
  const std::size_t k = pick(rng, 0, alg.block_count() - 1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> v(alg.block_size(k));
  for (auto& z : v) z = Complex(n(rng), n(rng));
  return AlgState::vector_state(alg, k, std::move(v));
}

FunctionalState random_pure_state(const FiniteMetricSpace& x, const Algebra& alg, Rng& rng) {
  const auto phi = random_vector_state(alg, rng);
  return delta_embed(phi, pick(rng, 0, x.size() - 1), x.size(), alg);
}

MatrixFunction random_sa_function(const FiniteMetricSpace& x, const Algebra& alg, Rng& rng) {
  std::vector<AlgElement> vals;
  for (std::size_t i = 0; i < x.size(); ++i) vals.push_back(random_self_adjoint(alg, rng));
  return MatrixFunction(x, alg, std::move(vals));
}

FiniteMetricSpace random_space(std::size_t n, Rng& rng) { return random_planar(n, rng()); }

}  // namespace qmetric
