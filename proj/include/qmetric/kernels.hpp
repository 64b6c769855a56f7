#pragma once

// Hot loops with a serial reference and an OpenMP version.  Both versions do
// the same floating-point operations per output element, so their results are
// bit-identical whatever the thread count.

#include <cstddef>
#include <span>

#include "qmetric/metric.hpp"

namespace qmetric::kernels {

/// Exchange step on a condensed tableau (rows x cols, row-major): the basic
/// variable of row r swaps with the nonbasic variable of column s.
void pivot_serial(std::span<double> tab, std::size_t rows, std::size_t cols, std::size_t r, std::size_t s);
void pivot_omp(std::span<double> tab, std::size_t rows, std::size_t cols, std::size_t r, std::size_t s);

/// max over i < j and c of |v[i][c] - v[j][c]| / d(i, j), where v is the
/// point-major array of `width` real coordinates per point.  0 for one point.
double max_ratio_serial(std::span<const double> v, std::size_t width, const FiniteMetricSpace& x);
double max_ratio_omp(std::span<const double> v, std::size_t width, const FiniteMetricSpace& x);

bool have_openmp();
/// Thread count for the OpenMP kernels; n <= 0 restores the runtime default.
void set_threads(int n);
int threads();

}  // namespace qmetric::kernels
