// Serial, parallel and worklist kernels on random machines of growing size.

#include "support/generators.hpp"

#include "ubisim/bisim.hpp"

#include <benchmark/benchmark.h>

using namespace ubisim;
using namespace ubisim::testing;

namespace {

PartialMealyMachine machine_of_size(std::size_t states) {
    std::mt19937 rng(static_cast<std::uint32_t>(states));
    return random_mealy(rng, {states, 3, 2, 0.8});
}

SuspensionAutomaton automaton_of_size(std::size_t states) {
    std::mt19937 rng(static_cast<std::uint32_t>(states));
    return random_sa(rng, states, 2, 3, 0.6);
}

void uncertain(benchmark::State& state, Execution exec) {
    const auto m = machine_of_size(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(uncertain_bisimilarity(m, exec));
    state.SetComplexityN(state.range(0));
}

void compat(benchmark::State& state, Execution exec) {
    const auto a = automaton_of_size(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ioco_compatibility(a, exec));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(uncertain, serial, Execution::serial)->RangeMultiplier(2)->Range(8, 256)->Complexity();
BENCHMARK_CAPTURE(uncertain, parallel, Execution::parallel)->RangeMultiplier(2)->Range(8, 256)->Complexity();
BENCHMARK_CAPTURE(uncertain, worklist, Execution::worklist)->RangeMultiplier(2)->Range(8, 256)->Complexity();
BENCHMARK_CAPTURE(compat, serial, Execution::serial)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_CAPTURE(compat, parallel, Execution::parallel)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_CAPTURE(compat, worklist, Execution::worklist)->RangeMultiplier(2)->Range(8, 128);

BENCHMARK_MAIN();
