#include <benchmark/benchmark.h>

#include <random>

#include "tcpkit/tensor.hpp"

namespace {

tcpkit::Tensor random_tensor(int m, int n) {
  std::mt19937_64 eng(12345);
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
  tcpkit::Vec entries(total);
  for (double& e : entries) e = static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
  return tcpkit::Tensor(m, n, std::move(entries));
}

tcpkit::Vec random_vec(int n) {
  std::mt19937_64 eng(54321);
  tcpkit::Vec v(static_cast<std::size_t>(n));
  for (double& c : v) c = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return v;
}

void BM_apply(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const tcpkit::Tensor a = random_tensor(m, n);
  const tcpkit::Vec x = random_vec(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.apply(x));
  }
}
BENCHMARK(BM_apply)->Args({3, 4})->Args({4, 6})->Args({5, 8});

void BM_poly_value(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const tcpkit::Tensor a = random_tensor(m, n);
  const tcpkit::Vec x = random_vec(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.poly_value(x));
  }
}
BENCHMARK(BM_poly_value)->Args({3, 4})->Args({4, 6});

void BM_symmetrize(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const tcpkit::Tensor a = random_tensor(m, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.symmetrize());
  }
}
BENCHMARK(BM_symmetrize)->Args({3, 4})->Args({4, 4});

}  // namespace

BENCHMARK_MAIN();
