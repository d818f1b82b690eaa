#include "tcpdist/model.hpp"
#include "tcpdist/sim.hpp"
#include "tcpdist/special_functions.hpp"

#include <benchmark/benchmark.h>

namespace {

const tcpdist::TcpParams kDefaults{5e-5, 3.0, 60.0};

void BM_MarcumQ1(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  double b = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpdist::special::marcum_q1(a, b).value());
    b = b < 60.0 ? b + 0.37 : 0.5;
  }
}
BENCHMARK(BM_MarcumQ1)->Arg(0)->Arg(2)->Arg(10)->Arg(50);

void BM_ContactCdf(benchmark::State& state) {
  double r = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpdist::model::contact_cdf(kDefaults, r).value());
    r = r < 180.0 ? r + 7.0 : 10.0;
  }
}
BENCHMARK(BM_ContactCdf);

void BM_NnCase2Cdf(benchmark::State& state) {
  double r = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcpdist::model::nn_case2_cdf(kDefaults, r).value());
    r = r < 180.0 ? r + 7.0 : 10.0;
  }
}
BENCHMARK(BM_NnCase2Cdf);

void BM_Curves200(benchmark::State& state) {
  const auto grid = tcpdist::model::uniform_grid(kDefaults.default_r_max(), 200);
  for (auto _ : state) benchmark::DoNotOptimize(tcpdist::model::evaluate_curves(kDefaults, grid));
}
BENCHMARK(BM_Curves200)->Unit(benchmark::kMillisecond);

void BM_SampleDistance(benchmark::State& state) {
  const auto kind = static_cast<tcpdist::sim::SampleKind>(state.range(0));
  const auto w = tcpdist::sim::SimWindow::covering(kDefaults, kDefaults.default_r_max());
  std::uint64_t i = 0;
  for (auto _ : state) {
    tcpdist::rng::StreamKey key;
    key.seed = 1;
    key.sample = i++;
    if (kind == tcpdist::sim::SampleKind::Contact) {
      benchmark::DoNotOptimize(tcpdist::sim::contact_distance_sample(kDefaults, w, key));
    } else {
      const auto which =
          kind == tcpdist::sim::SampleKind::NNCase1 ? tcpdist::sim::NnCase::Case1 : tcpdist::sim::NnCase::Case2;
      benchmark::DoNotOptimize(tcpdist::sim::nn_distance_sample(which, kDefaults, w, key));
    }
  }
}
BENCHMARK(BM_SampleDistance)->Arg(0)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
