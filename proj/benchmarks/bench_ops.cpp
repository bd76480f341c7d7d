#include <benchmark/benchmark.h>

#include "adictree/checks.hpp"
#include "adictree/norms.hpp"
#include "adictree/shifts.hpp"

using namespace adictree;

namespace {

void BM_MakeShift(benchmark::State& state) {
  const TruncatedSpace sp(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_shift(sp, ShiftKind::Serre));
  }
  state.SetLabel("dim=" + std::to_string(sp.dim()));
}
BENCHMARK(BM_MakeShift)->Arg(6)->Arg(8)->Arg(10);

void BM_IsometryProduct(benchmark::State& state) {
  const TruncatedSpace sp(2, static_cast<int>(state.range(0)));
  const TruncatedOperator w = make_shift(sp, ShiftKind::Serre);
  const TruncatedOperator ws = make_shift_adjoint(sp, ShiftKind::Serre);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ws * w);
  }
}
BENCHMARK(BM_IsometryProduct)->Arg(6)->Arg(8)->Arg(10);

void BM_SerreProjection(benchmark::State& state) {
  const TruncatedSpace sp(2, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection(sp, ProjectionFamily::Serre, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SerreProjection)->Arg(1)->Arg(3)->Arg(5);

void BM_SpectralNormDense(benchmark::State& state) {
  const TruncatedSpace sp(2, 6);
  const TruncatedOperator p = projection(sp, ProjectionFamily::Serre, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_spectral_norm(p));
  }
}
BENCHMARK(BM_SpectralNormDense);

void BM_SpectralNormPower(benchmark::State& state) {
  const TruncatedSpace sp(2, 10);
  const TruncatedOperator p = projection(sp, ProjectionFamily::Serre, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_spectral_norm(p, 1e-10));
  }
}
BENCHMARK(BM_SpectralNormPower);

void BM_RunCheck(benchmark::State& state) {
  CheckParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_check("isometry.W", params));
  }
}
BENCHMARK(BM_RunCheck);

}  // namespace

BENCHMARK_MAIN();
