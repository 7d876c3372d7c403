#include <random>

#include <benchmark/benchmark.h>

#include "brlkit/hinf.hpp"
#include "brlkit/kyp.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"
#include "brlkit/similarity.hpp"
#include "brlkit/system.hpp"

namespace {

using namespace brlkit;

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(gauss(rng), gauss(rng));
  return out;
}

SystemRealization bench_system(Index n, double target_norm) {
  std::mt19937_64 rng(0xBE7Cu + static_cast<unsigned>(n));
  Matrix A = random_matrix(rng, n, n);
  A *= 0.8 / spectral_radius(A);
  SystemRealization sys = SystemRealization::make(A, random_matrix(rng, n, 2) / double(n),
                                                  random_matrix(rng, 2, n) / double(n),
                                                  0.1 * random_matrix(rng, 2, 2));
  return scale_io(sys, target_norm / sample_norm(sys, 512, 1.0));
}

void BM_EvalTransfer(benchmark::State& state) {
  const SystemRealization sys = bench_system(state.range(0), 0.8);
  const Complex z(0.37, 0.41);
  for (auto _ : state) benchmark::DoNotOptimize(eval_transfer(sys, z).value);
}
BENCHMARK(BM_EvalTransfer)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SampleNorm(benchmark::State& state) {
  const SystemRealization sys = bench_system(8, 0.8);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_norm(sys, static_cast<int>(state.range(0)), 1.0));
}
BENCHMARK(BM_SampleNorm)->Arg(256)->Arg(1024)->Arg(4096);

void BM_TruncateOperators(benchmark::State& state) {
  const SystemRealization sys = bench_system(6, 0.8);
  for (auto _ : state)
    benchmark::DoNotOptimize(truncate_operators(sys, static_cast<int>(state.range(0))).hankel);
}
BENCHMARK(BM_TruncateOperators)->Arg(8)->Arg(32)->Arg(128);

void BM_RiccatiSolve(benchmark::State& state) {
  const SystemRealization sys = bench_system(state.range(0), 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(riccati_solve(sys, 1e-12, kTol.riccati_max_iterations, 0).margin);
}
BENCHMARK(BM_RiccatiSolve)->Arg(2)->Arg(4)->Arg(8);

void BM_StrictSolve(benchmark::State& state) {
  const SystemRealization sys = bench_system(state.range(0), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(strict_solve(sys, 1e-10).margin);
}
BENCHMARK(BM_StrictSolve)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ComputeSimilarity(benchmark::State& state) {
  std::mt19937_64 rng(0xBE7Cu);
  const Index n = state.range(0);
  const SystemRealization sys = bench_system(n, 0.8);
  Matrix T = random_matrix(rng, n, n);
  T += 3.0 * Matrix::Identity(n, n);
  const SystemRealization moved = transform_system(sys, T);
  for (auto _ : state) benchmark::DoNotOptimize(compute_similarity(sys, moved).gamma);
}
BENCHMARK(BM_ComputeSimilarity)->Arg(3)->Arg(6);

void BM_ControllabilityGramian(benchmark::State& state) {
  const SystemRealization sys = bench_system(state.range(0), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(controllability_gramian(sys).norm());
}
BENCHMARK(BM_ControllabilityGramian)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
