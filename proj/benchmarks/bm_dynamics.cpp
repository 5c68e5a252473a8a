#include <benchmark/benchmark.h>

#include "uhtp/dynamics.hpp"
#include "uhtp/hitting.hpp"
#include "uhtp/protocol.hpp"
#include "uhtp/reduction.hpp"

using namespace uhtp;

static void BM_ForwardStep(benchmark::State& state) {
  const BeaconStep step(counter_family(static_cast<std::uint64_t>(state.range(0))),
                        ClockMode::unbounded());
  ExtendedBasisState s = step.initial();
  for (auto _ : state) {
    step.advance(s);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ForwardStep)->Arg(2)->Arg(8)->Arg(32);

static void BM_EvolveInteger(benchmark::State& state) {
  const BeaconStep step(counter_family(4), ClockMode::unbounded());
  const SparseState psi = SparseState::basis(step.initial());
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_integer(step, psi, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolveInteger)->RangeMultiplier(10)->Range(10, 10000);

static void BM_MidPulse(benchmark::State& state) {
  const ClockMode mode = ClockMode::cyclic(state.range(0));
  const BeaconStep step(counter_family(2), mode);
  const PulseSchedule sched(Rational(1, 2), mode);
  const SparseState psi = SparseState::basis(step.initial());
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_to(step, sched, psi, Rational(13, 4)));
  }
}
BENCHMARK(BM_MidPulse)->RangeMultiplier(4)->Range(16, 16384);

static void BM_CycleAmplitude(benchmark::State& state) {
  const std::int64_t l = state.range(0);
  std::int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycle_amplitude(l, 0.37, k));
    k = (k + 1) % l;
  }
}
BENCHMARK(BM_CycleAmplitude)->RangeMultiplier(8)->Range(8, 1 << 15);

static void BM_SemiDecide(benchmark::State& state) {
  const auto inst = encode(counter_family(static_cast<std::uint64_t>(state.range(0))),
                           Rational(1, 4), Rational(1, 2), ClockMode::unbounded(),
                           BeaconSubspace{}, 100000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(uhit_semidecide(inst));
  }
}
BENCHMARK(BM_SemiDecide)->Arg(2)->Arg(9)->Arg(31);

static void BM_AdversarialSweep(benchmark::State& state) {
  std::vector<ProtocolBudget> budgets(1);
  budgets[0].tau_max = state.range(0);
  budgets[0].e_max = static_cast<std::uint64_t>(state.range(0)) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adversarial_sweep(budgets));
  }
}
BENCHMARK(BM_AdversarialSweep)->Arg(10)->Arg(100)->Arg(1000);
BENCHMARK_MAIN();
