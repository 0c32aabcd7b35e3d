#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "qdiscord/chain_models.hpp"
#include "qdiscord/discord_oracle.hpp"
#include "qdiscord/jacobi.hpp"
#include "qdiscord/precision.hpp"
#include "qdiscord/scaling_lab.hpp"
#include "qdiscord/thermal.hpp"
#include "qdiscord/xstate.hpp"

using namespace qdiscord;

namespace {

RMatrix random_symmetric(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

std::vector<int> separations(int rmax) {
  std::vector<int> rs(rmax);
  std::iota(rs.begin(), rs.end(), 1);
  return rs;
}

void BM_JacobiCyclic(benchmark::State& state) {
  const RMatrix a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::jacobi_cyclic(a));
}

void BM_JacobiRoundRobin(benchmark::State& state) {
  const RMatrix a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::jacobi_round_robin(a));
}

void BM_OracleGrid(benchmark::State& state) {
  const DensityMatrix rho = to_density_matrix(random_xstate(11));
  OracleOptions o;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(discord_numeric(rho, o));
}

void BM_ExactCorrelatorsDouble(benchmark::State& state) {
  const auto rs = separations(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_correlators_batch<double>(TFIM{2.0}, rs, state.range(0) != 0));
}

void BM_ExactCorrelatorsExtended(benchmark::State& state) {
  const auto rs = separations(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        exact_correlators_batch<Extended>(TFIM{2.0}, rs, state.range(0) != 0));
}

void BM_Diagonalize(benchmark::State& state) {
  const auto h = build_chain_hamiltonian(TFIM{1.0}, static_cast<std::size_t>(state.range(1)),
                                         Geometry::open_chain, 0);
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h, state.range(0) != 0));
}

void BM_AreaLawSweep(benchmark::State& state) {
  const auto h = build_chain_hamiltonian(XXZ{1.0}, 8, Geometry::open_chain, 0);
  const double betas[] = {0.5, 1.0, 2.0};
  const auto cuts = contiguous_cuts(8);
  for (auto _ : state)
    benchmark::DoNotOptimize(area_law_sweep(h, betas, cuts, {}, state.range(0) != 0));
}

}  // namespace

BENCHMARK(BM_JacobiCyclic)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiRoundRobin)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactCorrelatorsDouble)
    ->ArgNames({"parallel", "rmax"})
    ->Args({0, 128})
    ->Args({1, 128})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactCorrelatorsExtended)
    ->ArgNames({"parallel", "rmax"})
    ->Args({0, 64})
    ->Args({1, 64})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diagonalize)
    ->ArgNames({"parallel", "n"})
    ->Args({0, 8})
    ->Args({1, 8})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AreaLawSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
