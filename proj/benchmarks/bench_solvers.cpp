#include <benchmark/benchmark.h>

#include "tcpkit/bounds.hpp"
#include "tcpkit/classify.hpp"
#include "tcpkit/pareto.hpp"
#include "tcpkit/tcp.hpp"

namespace {

tcpkit::Tensor quad_tensor() {
  tcpkit::Tensor t(3, 2);
  t.set_entry({0, 0, 0}, 1.0);
  t.set_entry({0, 1, 1}, 1.0);
  t.set_entry({1, 0, 0}, 1.0);
  t.set_entry({1, 1, 0}, -2.0);
  t.set_entry({1, 1, 1}, 1.0);
  return t;
}

void BM_solve_enumerate(benchmark::State& state) {
  const tcpkit::TCPInstance inst(quad_tensor(), {-1.5, -0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpkit::solve_enumerate(inst));
  }
}
BENCHMARK(BM_solve_enumerate);

void BM_solve_merit(benchmark::State& state) {
  const tcpkit::TCPInstance inst(quad_tensor(), {-1.5, -0.5});
  tcpkit::SearchBudget b;
  b.multistarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpkit::solve_merit(inst, b));
  }
}
BENCHMARK(BM_solve_merit)->Arg(16)->Arg(64);

void BM_beta(benchmark::State& state) {
  const tcpkit::Tensor a = quad_tensor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpkit::beta(a));
  }
}
BENCHMARK(BM_beta);

void BM_classify_strictly_semi_positive(benchmark::State& state) {
  const tcpkit::Tensor a = quad_tensor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpkit::check_strictly_semi_positive(a));
  }
}
BENCHMARK(BM_classify_strictly_semi_positive);

void BM_lambda_min(benchmark::State& state) {
  const tcpkit::Tensor a = tcpkit::Tensor::diagonal_identity(3, 4);
  tcpkit::SearchBudget b = tcpkit::pareto_defaults();
  b.multistarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpkit::lambda_min(a, b));
  }
}
BENCHMARK(BM_lambda_min)->Arg(32)->Arg(128);

}  // namespace
