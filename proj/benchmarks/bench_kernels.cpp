#include <random>

#include <benchmark/benchmark.h>

#include "invk/data.hpp"
#include "invk/invariance.hpp"
#include "invk/spectral.hpp"

using namespace invk;

namespace {

DataPoint random_point(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& x : v) x = normal(rng);
  return DataPoint::real(v);
}

void BM_EvalKernelSignGaussian(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const int dim = static_cast<int>(state.range(0));
  const auto x = random_point(rng, dim), y = random_point(rng, dim);
  const KernelSpec spec{Gaussian{1.0}, InvarianceSpec::sign()};
  for (auto _ : state) benchmark::DoNotOptimize(eval_kernel(spec, x, y));
}
BENCHMARK(BM_EvalKernelSignGaussian)->Arg(2)->Arg(256);

void BM_EvalKernelChain(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const auto x = random_point(rng, 16), y = random_point(rng, 16);
  const KernelSpec spec{Gaussian{1.0}, parse_invariance("chain(scale,sign)")};
  for (auto _ : state) benchmark::DoNotOptimize(eval_kernel(spec, x, y));
}
BENCHMARK(BM_EvalKernelChain);

void BM_BuildGram(benchmark::State& state) {
  const auto data = gen_flipped_blobs(static_cast<int>(state.range(0)) / 2, 256, 6.0, 0.1, 0.5, 0);
  const KernelSpec spec{Gaussian{22.0}, InvarianceSpec::sign()};
  for (auto _ : state) benchmark::DoNotOptimize(build_gram(data, spec, 1).values.data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGram)->Arg(98)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SymEig(benchmark::State& state) {
  const auto data = gen_xor(static_cast<int>(state.range(0)) / 4, 0.15, 0);
  const auto gram = build_gram(data, {Gaussian{0.5}, InvarianceSpec::sign()});
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(gram).eigenvalues.data());
}
BENCHMARK(BM_SymEig)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_SpectralClusterFlutes(benchmark::State& state) {
  const auto g = gen_directions(6, 400, 15.0, {}, 0.02, 0);
  const auto data = top_norm_select(g.data, 270);
  const auto gram = build_gram(data, {Gaussian{0.1}, InvarianceSpec::projective()});
  for (auto _ : state) benchmark::DoNotOptimize(spectral_cluster(gram, 6, 0).labels.data());
}
BENCHMARK(BM_SpectralClusterFlutes)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
