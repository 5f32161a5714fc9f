#include "ubisim/fixpoint.hpp"

#include "ubisim/error.hpp"

#include <deque>

namespace ubisim {

const char* to_string(Execution e) {
    switch (e) {
    case Execution::serial:
        return "serial";
    case Execution::parallel:
        return "parallel";
    case Execution::worklist:
        return "worklist";
    }
    return "?";
}

namespace {

// One Jacobi round. Returns the number of removed pairs.
std::size_t serial_round(const PairRule& rule, Relation& current) {
    const std::size_t n = rule.states;
    std::vector<StatePair> removed;
    for (StateIndex x = 0; x < n; ++x)
        for (StateIndex y = 0; y < n; ++y)
            if (current.contains(x, y) && !rule.keep(x, y, current))
                removed.emplace_back(x, y);
    for (const auto& [x, y] : removed)
        current.erase(x, y);
    return removed.size();
}

std::size_t parallel_round(const PairRule& rule, Relation& current) {
    const std::size_t n = rule.states;
    const long long total = static_cast<long long>(n * n);
    std::vector<std::uint8_t> drop(n * n, 0);
    std::size_t removed = 0;

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : removed) if (n * n >= parallel_pair_threshold)
    for (long long k = 0; k < total; ++k) {
        const StateIndex x = static_cast<StateIndex>(k) / n;
        const StateIndex y = static_cast<StateIndex>(k) % n;
        if (current.contains(x, y) && !rule.keep(x, y, current)) {
            drop[static_cast<std::size_t>(k)] = 1;
            ++removed;
        }
    }

    // The barrier at the end of the loop separates reading from writing.
    for (std::size_t k = 0; k < drop.size(); ++k)
        if (drop[k])
            current.erase(k / n, k % n);
    return removed;
}

Relation worklist(const PairRule& rule) {
    const std::size_t n = rule.states;
    Relation current = Relation::full(n, n);
    std::vector<std::uint8_t> queued(n * n, 1);
    std::deque<StatePair> pending;
    for (StateIndex x = 0; x < n; ++x)
        for (StateIndex y = 0; y < n; ++y)
            pending.emplace_back(x, y);

    while (!pending.empty()) {
        const auto [x, y] = pending.front();
        pending.pop_front();
        queued[x * n + y] = 0;
        if (!current.contains(x, y) || rule.keep(x, y, current))
            continue;
        current.erase(x, y);
        for (const auto& by_state : rule.predecessors)
            for (StateIndex u : by_state[x])
                for (StateIndex v : by_state[y])
                    if (current.contains(u, v) && !queued[u * n + v]) {
                        queued[u * n + v] = 1;
                        pending.emplace_back(u, v);
                    }
    }
    return current;
}

void check_rule(const PairRule& rule) {
    if (!rule.keep)
        throw ContractViolation("fixpoint rule has no keep predicate");
    for (const auto& by_state : rule.predecessors)
        if (by_state.size() != rule.states)
            throw ContractViolation("fixpoint rule: predecessor table does not cover every state");
}

}  // namespace

Relation greatest_fixpoint(const PairRule& rule, Execution execution) {
    check_rule(rule);
    if (execution == Execution::worklist)
        return worklist(rule);
    Relation current = Relation::full(rule.states, rule.states);
    auto round = execution == Execution::parallel ? parallel_round : serial_round;
    while (round(rule, current) > 0) {
    }
    return current;
}

std::vector<Relation> fixpoint_iterates(const PairRule& rule) {
    check_rule(rule);
    std::vector<Relation> iterates{Relation::full(rule.states, rule.states)};
    while (true) {
        Relation next = iterates.back();
        if (serial_round(rule, next) == 0)
            return iterates;
        iterates.push_back(std::move(next));
    }
}

}  // namespace ubisim
