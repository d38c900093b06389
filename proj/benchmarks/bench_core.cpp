#include <benchmark/benchmark.h>

#include <random>

#include "berezin/bergman.hpp"
#include "berezin/numerics.hpp"
#include "berezin/starprod.hpp"

namespace {

void BM_GaussJacobi(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(berezin::numerics::gauss_jacobi(order, 0.5));
}
BENCHMARK(BM_GaussJacobi)->Arg(16)->Arg(64)->Arg(256);

void BM_KernelSeriesDisk(benchmark::State& state) {
  const auto disk = berezin::DomainModel::disk();
  const auto basis = berezin::BergmanBasis::for_radius(disk, 1.0);
  const auto z = berezin::make_point({{0.3, 0.4}});
  const auto w = berezin::make_point({{-0.5, 0.1}});
  for (auto _ : state) benchmark::DoNotOptimize(berezin::kernel_series(basis, z, w));
  state.counters["basis"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_KernelSeriesDisk);

void BM_KernelSeriesBall(benchmark::State& state) {
  const auto ball = berezin::DomainModel::ball(2);
  const auto basis = berezin::BergmanBasis::for_radius(ball, 1.0);
  const auto z = berezin::make_point({{0.3, 0.1}, {0.2, -0.4}});
  for (auto _ : state) benchmark::DoNotOptimize(berezin::kernel_series(basis, z, z));
  state.counters["basis"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_KernelSeriesBall);

void BM_BalancedVerdictDisk(benchmark::State& state) {
  const auto disk = berezin::DomainModel::disk();
  for (auto _ : state) benchmark::DoNotOptimize(berezin::balanced_verdict(disk, 1.0));
}
BENCHMARK(BM_BalancedVerdictDisk)->Unit(benchmark::kMillisecond);

void BM_Toeplitz(benchmark::State& state) {
  const auto disk = berezin::DomainModel::disk();
  const auto ctx = berezin::QuantContext::create(disk, static_cast<double>(state.range(0)), 0.5);
  const berezin::Symbol f = [](const berezin::Point& z) { return berezin::Complex(z(0).real()); };
  for (auto _ : state) benchmark::DoNotOptimize(berezin::toeplitz_operator(ctx, f));
  state.counters["n_op"] = ctx.n_op();
}
BENCHMARK(BM_Toeplitz)->Arg(5)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_GaugedKernel(benchmark::State& state) {
  const auto gauged = berezin::DomainModel::disk().with_gauge({{0.0, 0.0, 0.0, 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(berezin::GaugedKernel(gauged, 1.0, 120));
}
BENCHMARK(BM_GaugedKernel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
