#include <benchmark/benchmark.h>

#include <vector>

#include "rcl/distribution.hpp"
#include "rcl/hypothesis.hpp"
#include "rcl/rng.hpp"

namespace {

std::vector<rcl::LabeledExample> random_consistent_sample(std::uint32_t domain,
                                                          std::size_t count,
                                                          std::uint64_t seed) {
  rcl::Rng rng(seed);
  const auto target = rcl::Hypothesis::threshold(domain / 2, domain);
  std::vector<rcl::LabeledExample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const rcl::Point x{static_cast<std::uint32_t>(rng.next_below(domain))};
    out.push_back({x, target.evaluate(x)});
  }
  return out;
}

void ConsistencyOracleThreshold(benchmark::State& state) {
  const auto cls =
      rcl::HypothesisClass::threshold(static_cast<std::uint32_t>(state.range(1)));
  const auto sample = random_consistent_sample(
      cls.domain_size(), static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cls.consistent(sample));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ConsistencyOracleThreshold)
    ->Args({256, 64})
    ->Args({1024, 64})
    ->Args({4096, 64})
    ->Complexity();

void ConsistencyOraclePowerset(benchmark::State& state) {
  const auto cls =
      rcl::HypothesisClass::powerset(static_cast<std::uint32_t>(state.range(1)));
  rcl::Rng rng(11);
  std::vector<rcl::LabeledExample> sample;
  const auto target = cls.default_hypothesis();
  for (int i = 0; i < state.range(0); ++i) {
    const rcl::Point x{
        static_cast<std::uint32_t>(rng.next_below(cls.domain_size()))};
    sample.push_back({x, target.evaluate(x)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cls.consistent(sample));
  }
}
BENCHMARK(ConsistencyOraclePowerset)->Args({1024, 16})->Args({4096, 16});

void ExactErrorRate(benchmark::State& state) {
  const std::uint32_t domain = static_cast<std::uint32_t>(state.range(0));
  const auto cls = rcl::HypothesisClass::threshold(domain);
  const auto f = rcl::Hypothesis::threshold(domain / 3, domain);
  const auto target = rcl::Hypothesis::threshold(domain / 2, domain);
  const auto dist = rcl::Distribution::uniform(domain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rcl::error_rate(f, target, dist));
  }
}
BENCHMARK(ExactErrorRate)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
