// Serial vs OpenMP: tableau pivot, Lipschitz max ratio, pairwise mk.
//   ./qmetric_bench --benchmark_filter=Pivot

#include <benchmark/benchmark.h>

#include <random>

#include "qmetric/generators.hpp"
#include "qmetric/kernels.hpp"
#include "qmetric/mk.hpp"
#include "qmetric/sampling.hpp"

using namespace qmetric;

namespace {

std::vector<double> random_tableau(std::size_t rows, std::size_t cols) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> t(rows * cols);
  for (auto& v : t) v = u(g);
  return t;
}

template <bool Omp>
void Pivot(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto tab = random_tableau(n, n);
  std::size_t k = 0;
  for (auto _ : st) {
    const std::size_t r = k % n, s = (k * 7) % n;
    if (Omp)
      kernels::pivot_omp(tab, n, n, r, s);
    else
      kernels::pivot_serial(tab, n, n, r, s);
    ++k;
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <bool Omp>
void MaxRatio(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_planar(n, 2);
  const std::size_t w = 8;
  std::mt19937_64 g(3);
  std::normal_distribution<double> nd;
  std::vector<double> v(n * w);
  for (auto& e : v) e = nd(g);
  for (auto _ : st) benchmark::DoNotOptimize(Omp ? kernels::max_ratio_omp(v, w, x) : kernels::max_ratio_serial(v, w, x));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * (n - 1) / 2));
}

template <bool Omp>
void PairwiseMk(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = circle_net(6, CircleMetric::chord, 1.0);
  const Algebra alg({2});
  Rng rng(4);
  std::vector<FunctionalState> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(random_pure_state(x, alg, rng));
  const SeminormSpec conv{NormKind::real_max, QKind::conv, std::nullopt, 1.0};
  kernels::set_threads(Omp ? 0 : 1);
  for (auto _ : st) benchmark::DoNotOptimize(mk_matrix(states, x, alg, conv));
  kernels::set_threads(0);
}

}  // namespace

BENCHMARK(Pivot<false>)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(Pivot<true>)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(MaxRatio<false>)->Arg(200)->Arg(800);
BENCHMARK(MaxRatio<true>)->Arg(200)->Arg(800);
BENCHMARK(PairwiseMk<false>)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(PairwiseMk<true>)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
