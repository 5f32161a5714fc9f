#pragma once

// Greatest fixpoints on pair relations by iterated pair removal.
//
// A rule decides, for a pair (x, y) and the current iterate R, whether the pair
// survives. Rules must be monotone in R. Three interchangeable kernels are
// provided; all of them return the same relation.

#include "ubisim/relation.hpp"

#include <functional>
#include <vector>

namespace ubisim {

enum class Execution {
    /// Jacobi rounds on one thread; the reference implementation.
    serial,
    /// Jacobi rounds with the per-pair checks of a round spread over OpenMP threads.
    parallel,
    /// Gauss-Seidel removal that rechecks only predecessors of removed pairs.
    worklist,
};

const char* to_string(Execution e);

struct PairRule {
    std::size_t states = 0;
    std::function<bool(StateIndex, StateIndex, const Relation&)> keep;
    /// predecessors[label][s] lists every state with a `label` edge into s.
    /// Only the worklist kernel reads it; the pairs whose verdict can change
    /// after removing (x, y) are predecessors[l][x] × predecessors[l][y].
    std::vector<std::vector<std::vector<StateIndex>>> predecessors;
};

/// Pair count from which the parallel kernel actually forks threads.
inline constexpr std::size_t parallel_pair_threshold = 256;

Relation greatest_fixpoint(const PairRule& rule, Execution execution = Execution::parallel);

/// Iterates of the serial kernel, starting with the full relation and ending
/// with the fixpoint (which therefore appears once, as the last element).
std::vector<Relation> fixpoint_iterates(const PairRule& rule);

}  // namespace ubisim
