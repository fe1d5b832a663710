// Serial reference kernels against the OpenMP versions, on square d x d x d
// systems (total dimension d^3).

#include <benchmark/benchmark.h>

#include "entangle/kernels.hpp"
#include "entangle/states.hpp"

namespace {

using namespace entangle;

ComplexMatrix random_matrix(std::size_t dim) {
  return states::random_density(dim, dim, Seed{17}).matrix();
}

template <bool Parallel>
void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Dims dims = {d, d, d};
  const std::size_t keep[] = {0, 2};
  const ComplexMatrix m = random_matrix(d * d * d);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::partial_trace(m, dims, keep));
    } else {
      benchmark::DoNotOptimize(kernels::reference::partial_trace(m, dims, keep));
    }
  }
}

template <bool Parallel>
void BM_PartialTranspose(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Dims dims = {d * d, d};
  const ComplexMatrix m = random_matrix(d * d * d);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::partial_transpose(m, dims, 1));
    } else {
      benchmark::DoNotOptimize(kernels::reference::partial_transpose(m, dims, 1));
    }
  }
}

template <bool Parallel>
void BM_Kron(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(d * d);
  const ComplexMatrix b = random_matrix(d);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::kron(a, b));
    } else {
      benchmark::DoNotOptimize(kernels::reference::kron(a, b));
    }
  }
}

template <bool Parallel>
void BM_Permute(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Dims dims = {d, d, d};
  const std::size_t order[] = {2, 0, 1};
  const ComplexMatrix m = random_matrix(d * d * d);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(kernels::permute(m, dims, order));
    } else {
      benchmark::DoNotOptimize(kernels::reference::permute(m, dims, order));
    }
  }
}

BENCHMARK(BM_PartialTrace<false>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_PartialTrace<true>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_PartialTranspose<false>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_PartialTranspose<true>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_Kron<false>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_Kron<true>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_Permute<false>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_Permute<true>)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
