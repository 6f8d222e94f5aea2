#include <benchmark/benchmark.h>

#include "wallkit/corona.hpp"
#include "wallkit/shape.hpp"

using namespace wallkit;

namespace {

void BM_ContactTable(benchmark::State& state) {
  RealizedShape s = realize(corpus("heesch_pentagon"));
  for (auto _ : state) benchmark::DoNotOptimize(ContactTable(s, {}).contacts().size());
}
BENCHMARK(BM_ContactTable)->Unit(benchmark::kMillisecond);

void BM_FindWall(benchmark::State& state) {
  RealizedShape s = realize(corpus("square_semicircle"));
  ContactTable table(s, {});
  for (auto _ : state) benchmark::DoNotOptimize(find_wall(table, static_cast<int>(state.range(0)), {6, 6.0}));
}
BENCHMARK(BM_FindWall)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Surround(benchmark::State& state) {
  RealizedShape s = realize(corpus("deformed_hexagon"));
  ContactTable table(s, {});
  for (auto _ : state) benchmark::DoNotOptimize(surround(table, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Surround)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
