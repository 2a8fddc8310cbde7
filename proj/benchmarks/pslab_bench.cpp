#include <benchmark/benchmark.h>

#include <cmath>

#include "pslab/experiment.hpp"
#include "pslab/expsums.hpp"
#include "pslab/numerics.hpp"
#include "pslab/parallel.hpp"
#include "pslab/primes.hpp"

namespace {

const pslab::AlphaSpec kRoot2 = pslab::AlphaSpec::parse("sqrt:2");
const pslab::Rational kGamma(19, 20);

void BM_PowReal(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  std::uint64_t n = 1000003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::pow_real(n++, kGamma, bits));
  }
}
BENCHMARK(BM_PowReal)->Arg(64)->Arg(128)->Arg(512);

void BM_Sieve(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::sieve(1, hi));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->Arg(100000)->Arg(1000000);

void BM_OrderedSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::ordered_sum<double>(n, [](std::size_t i) {
      return std::sin(static_cast<double>(i)) / static_cast<double>(i + 1);
    }));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrderedSum)->Arg(1 << 16)->Arg(1 << 20);

void BM_PsCount(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::ps_count(static_cast<std::uint64_t>(state.range(0)), kGamma));
  }
}
BENCHMARK(BM_PsCount)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_GammaSums(benchmark::State& state) {
  const auto conv = *pslab::convergent_with_denominator(kRoot2, state.range(0));
  const auto params = pslab::derive_params(kRoot2, pslab::FixedReal::from_integer(0, 128), kGamma,
                                           1.0, 0.0, conv);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::gamma_sums(params));
  }
}
BENCHMARK(BM_GammaSums)->Arg(169)->Arg(985)->Unit(benchmark::kMillisecond);

void BM_OmegaSum(benchmark::State& state) {
  const auto beta = pslab::FixedReal::from_integer(0, 128);
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pslab::omega_sum(kRoot2, beta, 0.2, 31, N));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OmegaSum)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
