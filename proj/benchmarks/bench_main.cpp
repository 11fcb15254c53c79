#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "tdlc/coxeter.hpp"
#include "tdlc/kak_building.hpp"
#include "tdlc/kak_tree.hpp"
#include "tdlc/padic.hpp"

using namespace tdlc;

namespace {

RACoxeterSystem free3() { return RACoxeterSystem({"r", "s", "t"}, {}); }

BuildingSpecPtr dinf_q(int q) {
  return std::make_shared<const BuildingSpec>(RACoxeterSystem({"s", "t"}, {}), std::vector<int>{q, q});
}

void BM_CoxeterEnumerate(benchmark::State& state) {
  const auto sys = free3();
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_elements(sys, l));
}
BENCHMARK(BM_CoxeterEnumerate)->DenseRange(4, 10, 2);

void BM_CoxeterMultiply(benchmark::State& state) {
  const auto sys = free3();
  const auto els = enumerate_elements(sys, 6);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.multiply(els[i % els.size()], els[(i * 7 + 3) % els.size()]));
    ++i;
  }
}
BENCHMARK(BM_CoxeterMultiply);

void BM_U1StabilizerBall(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_U1_stabilizer_ball(LocalGroup::symmetric(3), r));
}
BENCHMARK(BM_U1StabilizerBall)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_TreeFactorize(benchmark::State& state) {
  const auto f = LocalGroup::symmetric(3);
  const auto k = enumerate_U1_stabilizer_ball(f, 2);
  const auto dec = enumerate_representatives(k, f, 2);
  const auto words = words_within(3, 2);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto g = k.lifts[rng() % k.lifts.size()] * ColoredAutomorphism::translation(3, words[rng() % words.size()]);
    benchmark::DoNotOptimize(factorize(g, dec, 2));
  }
}
BENCHMARK(BM_TreeFactorize)->Unit(benchmark::kMicrosecond);

void BM_PadicConjugationCheck(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto h = random_matrix(rng, 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(conjugation_formula_check(h, n));
}
BENCHMARK(BM_PadicConjugationCheck)->Arg(10)->Arg(30)->Arg(100);

void BM_ChamberBall(benchmark::State& state) {
  const auto spec = dinf_q(3);
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ChamberBall(spec, l));
}
BENCHMARK(BM_ChamberBall)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_BuildingFactorize(benchmark::State& state) {
  const auto spec = dinf_q(3);
  const auto bc = representatives(spec, 3);
  const ChamberBall ball(spec, 4);
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    const auto g = random_chamber_stabilizer(ball, rng) *
                   BuildingAutomorphism::left_multiplication(spec, spec->normal_form({{0, 1}, {1, 2}}));
    benchmark::DoNotOptimize(factorize(g, bc, ball));
  }
}
BENCHMARK(BM_BuildingFactorize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
