#include <benchmark/benchmark.h>

#include "jhol/kernels.hpp"
#include "jhol/reference.hpp"

namespace {

jhol::DiscGrid field(int n_r, int n_theta) {
  return jhol::DiscGrid::sample_scalar(n_r, n_theta, [](jhol::Complex z) {
    return std::exp(z) * std::conj(z) + 0.25 * z * z;
  });
}

void BM_Wirtinger(benchmark::State& state, jhol::Exec exec) {
  const int n_r = static_cast<int>(state.range(0));
  const auto u = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::wirtinger_kernel(u, exec));
}

void BM_WirtingerReference(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const auto u = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::reference::wirtinger(u));
}

void BM_CauchyGreenModal(benchmark::State& state, jhol::Exec exec) {
  const int n_r = static_cast<int>(state.range(0));
  const auto f = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::cauchy_green_modal(f, exec));
}

void BM_CauchyGreenDirect(benchmark::State& state, jhol::Exec exec) {
  const int n_r = static_cast<int>(state.range(0));
  const auto f = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::cauchy_green_direct(f, exec));
}

void BM_CauchyGreenReference(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const auto f = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::reference::cauchy_green(f));
}

void BM_CellFlux(benchmark::State& state, jhol::Exec exec) {
  const int n_r = static_cast<int>(state.range(0));
  const auto f = field(n_r, 2 * n_r);
  for (auto _ : state) benchmark::DoNotOptimize(jhol::cell_flux_kernel(f, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Wirtinger, serial, jhol::Exec::serial)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_Wirtinger, parallel, jhol::Exec::parallel)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_WirtingerReference)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_CauchyGreenModal, serial, jhol::Exec::serial)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_CauchyGreenModal, parallel, jhol::Exec::parallel)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_CauchyGreenDirect, serial, jhol::Exec::serial)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_CauchyGreenDirect, parallel, jhol::Exec::parallel)->Arg(16)->Arg(32);
BENCHMARK(BM_CauchyGreenReference)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_CellFlux, serial, jhol::Exec::serial)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_CellFlux, parallel, jhol::Exec::parallel)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
