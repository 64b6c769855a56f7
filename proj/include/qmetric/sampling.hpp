#pragma once

// Random instances for tests, reports and the CLI.  All draws go through a
// caller-owned mt19937_64 so a seed pins everything.

#include <random>
#include <vector>

#include "qmetric/function.hpp"
#include "qmetric/states.hpp"

namespace qmetric {

using Rng = std::mt19937_64;

std::vector<double> random_probability(std::size_t n, Rng& rng);
/// Random block structure with 1..max_blocks blocks of size 1..max_size.
Algebra random_algebra(std::size_t max_blocks, std::size_t max_size, Rng& rng);
/// Entries with real and imaginary parts uniform in [-1, 1].
AlgElement random_element(const Algebra& alg, Rng& rng);
AlgElement random_self_adjoint(const Algebra& alg, Rng& rng);
/// Random weights and random full-rank densities  G G* / tr(G G*).
AlgState random_alg_state(const Algebra& alg, Rng& rng);
/// Vector state of a random unit vector in a random block.
AlgState random_vector_state(const Algebra& alg, Rng& rng);
/// phi_x with phi a random vector state and x uniform.
FunctionalState random_pure_state(const FiniteMetricSpace& x, const Algebra& alg, Rng& rng);
MatrixFunction random_sa_function(const FiniteMetricSpace& x, const Algebra& alg, Rng& rng);
/// Random metric on n points: Euclidean distances of uniform points in [0,1]^2.
FiniteMetricSpace random_space(std::size_t n, Rng& rng);

}  // namespace qmetric
