#include <benchmark/benchmark.h>

#include <random>

#include "wallkit/arrangement.hpp"

using namespace wallkit;

namespace {

Scalar small(std::mt19937_64& rng) {
  auto c = [&] { return static_cast<std::int64_t>(rng() % 201) - 100; };
  return Scalar(BigInt(c()), BigInt(c()), BigInt(1 + static_cast<std::int64_t>(rng() % 50)));
}

void BM_ScalarMulAdd(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Scalar> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(small(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    Scalar r = xs[i % 256] * xs[(i + 1) % 256] + xs[(i + 2) % 256];
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(BM_ScalarMulAdd);

void BM_ScalarCompare(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<Scalar> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(small(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare(xs[i % 256], xs[(i + 7) % 256]));
    ++i;
  }
}
BENCHMARK(BM_ScalarCompare);

void BM_SubdivisionGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Region> regions;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Scalar x0(x), y0(y), x1(x + 1), y1(y + 1);
      regions.emplace_back(Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
    }
  for (auto _ : state) benchmark::DoNotOptimize(Subdivision::build(regions).faces().size());
}
BENCHMARK(BM_SubdivisionGrid)->Arg(3)->Arg(6);

}  // namespace
