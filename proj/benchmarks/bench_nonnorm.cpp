#include <benchmark/benchmark.h>

#include "nonnorm/construct.hpp"
#include "nonnorm/stbc.hpp"

using namespace nonnorm;

static void BM_VerifyTable(benchmark::State& state) {
  const Ring ring = state.range(0) == 0 ? Ring::gaussian : Ring::eisenstein;
  const auto rows = ReferenceTable::bundled().rows(ring);
  for (auto _ : state) {
    for (const auto& [n, m] : rows) benchmark::DoNotOptimize(verify_entry(BaseField::of(ring), n, m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
}

static void BM_FindModulus(benchmark::State& state) {
  const auto n = static_cast<arith::u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_modulus(Ring::gaussian, n));
}

static void BM_GenerateTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_table(Ring::gaussian, 2, 100));
}

static void BM_Energy(benchmark::State& state) {
  const auto n = static_cast<arith::u64>(state.range(0));
  const CodeSpec spec = make_code_spec(galois_orbit(plan_extension(Ring::gaussian, n, 17)), one_plus_i());
  for (auto _ : state) benchmark::DoNotOptimize(energy(spec));
}

static void BM_DetNorm(benchmark::State& state) {
  const auto n = static_cast<arith::u64>(state.range(0));
  const CodeSpec spec = make_code_spec(galois_orbit(plan_extension(Ring::gaussian, n, 17)), one_plus_i());
  SymbolMatrix X(n, std::vector<QuadInt>(n, QuadInt::zero(Ring::gaussian)));
  // One symbol per layer keeps |det|^2 inside 64 bits at n = 8.
  for (arith::u64 i = 0; i < n; ++i) X[i][i % 2] = {1, static_cast<std::int64_t>(i % 3) - 1, Ring::gaussian};
  for (auto _ : state) benchmark::DoNotOptimize(det_norm(build_codeword(spec, X)));
}

static void BM_MinDet(benchmark::State& state) {
  const CodeSpec spec = make_code_spec(galois_orbit(plan_extension(Ring::gaussian, 2, 3)), one_plus_i());
  for (auto _ : state) benchmark::DoNotOptimize(min_det_bruteforce(spec, 1));
}

BENCHMARK(BM_VerifyTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindModulus)->Arg(8)->Arg(24)->Arg(97)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GenerateTable)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_Energy)->Arg(8)->Arg(16);
BENCHMARK(BM_DetNorm)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MinDet)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
