#include <benchmark/benchmark.h>

#include <random>

#include "topomagic/ground_state.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/pauli_mps.hpp"

using namespace topomagic;

static void BM_Contract(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const std::size_t chi = static_cast<std::size_t>(st.range(0));
  auto a = DenseTensor::random({chi, 4, chi}, rng), b = DenseTensor::random({chi, 4, chi}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(contract(a, {2}, b, {0}));
}
BENCHMARK(BM_Contract)->Arg(16)->Arg(32)->Arg(64);

static void BM_Svd(benchmark::State& st) {
  std::mt19937_64 rng(2);
  const std::size_t chi = static_cast<std::size_t>(st.range(0));
  auto t = DenseTensor::random({chi, 4, chi}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(svd_truncate(t, {0, 1}, {chi, 1e-12, true}));
}
BENCHMARK(BM_Svd)->Arg(16)->Arg(32)->Arg(64);

static void BM_PauliMpsBuild(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  auto psi = Mps::random(n, 2, 8, rng);
  for (auto _ : st) benchmark::DoNotOptimize(build_compressed_pauli_mps(psi, std::nullopt, {64, 1e-12, true}));
}
BENCHMARK(BM_PauliMpsBuild)->Arg(8)->Arg(16)->Arg(32);

static void BM_TopologicalSreCluster(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  auto psi = dope_with_t_gates(cluster_state(n), all);
  auto part = PartitionSpec::quad(n);
  for (auto _ : st) benchmark::DoNotOptimize(topological_sre(psi, part, 2));
}
BENCHMARK(BM_TopologicalSreCluster)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_DmrgTfim(benchmark::State& st) {
  ModelSpec s;
  s.kind = ModelKind::tfim;
  s.length = static_cast<std::size_t>(st.range(0));
  s.h = 1.0;
  const Mpo h = build_mpo(s);
  SolverConfig c;
  c.max_bond = 32;
  for (auto _ : st) benchmark::DoNotOptimize(find_ground_state(h, c));
}
BENCHMARK(BM_DmrgTfim)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
