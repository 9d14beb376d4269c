#include <benchmark/benchmark.h>

#include "flutekit/criteria.hpp"
#include "flutekit/develop.hpp"
#include "flutekit/shears.hpp"

using namespace flutekit;

namespace {

FluteDescriptor paired_flute(std::uint64_t n) {
  FluteDescriptor d;
  d.generator = LengthGenerator::parse("pairs-of:plog:2");
  d.truncation = n;
  d.lengths = expand_lengths(*d.generator, n);
  d.twists = TwistPattern::every(n);
  return d;
}

void BM_LogCoth(benchmark::State& state) {
  PrecisionScope guard(state.range(0));
  Real x(0.37);
  for (auto _ : state) {
    Real r = log_coth(x);
    benchmark::DoNotOptimize(r.raw());
  }
}
BENCHMARK(BM_LogCoth)->Arg(128)->Arg(256)->Arg(512);

void BM_EtaLength(benchmark::State& state) {
  Real la(8.0), lb(9.5);
  for (auto _ : state) {
    Real r = eta_length(la, lb);
    benchmark::DoNotOptimize(r.raw());
  }
}
BENCHMARK(BM_EtaLength);

void BM_ShearSequence(benchmark::State& state) {
  FluteDescriptor d = paired_flute(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    ShearSequence s = shear_sequence(d);
    benchmark::DoNotOptimize(s.shears.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShearSequence)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_ClassifyFlute(benchmark::State& state) {
  FluteDescriptor d = paired_flute(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    Verdict v = classify_flute(d);
    benchmark::DoNotOptimize(v.kind);
  }
}
BENCHMARK(BM_ClassifyFlute)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_DevelopChain(benchmark::State& state) {
  PrecisionScope guard(state.range(1));
  FluteDescriptor d = paired_flute(static_cast<std::uint64_t>(state.range(0)) / 2 + 1);
  ShearSequence s = shear_sequence(d);
  for (auto _ : state) {
    GeodesicChain chain = develop_chain(s);
    benchmark::DoNotOptimize(chain.gaps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size() - 1));
}
BENCHMARK(BM_DevelopChain)->Args({512, 128})->Args({4096, 128})->Args({4096, 256})
    ->Unit(benchmark::kMillisecond);

void BM_AlternatingSums(benchmark::State& state) {
  FluteDescriptor d = paired_flute(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    AlternatingSums sums = alternating_sums(d.lengths, d.twists);
    benchmark::DoNotOptimize(sums.sigma.data());
  }
}
BENCHMARK(BM_AlternatingSums)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
