#include "qmetric/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef QMETRIC_HAVE_OPENMP
#include <omp.h>
#endif

namespace qmetric::kernels {

namespace {

inline void scale_pivot_row(double* row, std::size_t cols, std::size_t s) {
  const double p = row[s];
  for (std::size_t j = 0; j < cols; ++j)
    if (j != s) row[j] /= p;
  row[s] = 1.0 / p;
}

inline void eliminate(double* row, const double* prow, std::size_t cols, std::size_t s) {
  const double f = row[s];
  if (f == 0.0) return;
  for (std::size_t j = 0; j < cols; ++j)
    if (j != s) row[j] -= f * prow[j];
  row[s] = -f * prow[s];
}

inline double pair_ratio(const double* a, const double* b, std::size_t width, double d) {
  double worst = 0.0;
  for (std::size_t c = 0; c < width; ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
  return worst / d;
}

}  // namespace

void pivot_serial(std::span<double> tab, std::size_t rows, std::size_t cols, std::size_t r, std::size_t s) {
  double* t = tab.data();
  double* prow = t + r * cols;
  scale_pivot_row(prow, cols, s);
  for (std::size_t i = 0; i < rows; ++i)
    if (i != r) eliminate(t + i * cols, prow, cols, s);
}

void pivot_omp(std::span<double> tab, std::size_t rows, std::size_t cols, std::size_t r, std::size_t s) {
#ifdef QMETRIC_HAVE_OPENMP
  double* t = tab.data();
  double* prow = t + r * cols;
  scale_pivot_row(prow, cols, s);
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (static_cast<std::size_t>(i) != r) eliminate(t + i * cols, prow, cols, s);
#else
  pivot_serial(tab, rows, cols, r, s);
#endif
}

double max_ratio_serial(std::span<const double> v, std::size_t width, const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, pair_ratio(&v[i * width], &v[j * width], width, x.d(i, j)));
  return worst;
}

double max_ratio_omp(std::span<const double> v, std::size_t width, const FiniteMetricSpace& x) {
#ifdef QMETRIC_HAVE_OPENMP
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  double worst = 0.0;
  // max is exact and order-free, so the reduction matches the serial scan
#pragma omp parallel for schedule(dynamic, 4) reduction(max : worst)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = i + 1; j < n; ++j)
      worst = std::max(worst, pair_ratio(&v[i * width], &v[j * width], width, x.d(i, j)));
  return worst;
#else
  return max_ratio_serial(v, width, x);
#endif
}

bool have_openmp() {
#ifdef QMETRIC_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

#ifdef QMETRIC_HAVE_OPENMP
namespace {
int default_threads = omp_get_max_threads();
}
void set_threads(int n) { omp_set_num_threads(n > 0 ? n : default_threads); }
int threads() { return omp_get_max_threads(); }
#else
void set_threads(int) {}
int threads() { return 1; }
#endif

}  // namespace qmetric::kernels
