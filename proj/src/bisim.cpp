#include "ubisim/bisim.hpp"

#include "ubisim/error.hpp"
#include "ubisim/lifting.hpp"

#include <cstdlib>
#include <deque>
#include <string>

namespace ubisim {

namespace {

std::vector<std::vector<std::vector<StateIndex>>> mealy_predecessors(const PartialMealyMachine& m) {
    std::vector<std::vector<std::vector<StateIndex>>> preds(
        m.inputs().size(), std::vector<std::vector<StateIndex>>(m.num_states()));
    for (StateIndex x = 0; x < m.num_states(); ++x)
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i)
            if (const auto& e = m.step(x, i))
                preds[i][e->target].push_back(x);
    return preds;
}

std::vector<std::vector<std::vector<StateIndex>>> sa_predecessors(const SuspensionAutomaton& a) {
    const std::size_t ni = a.inputs().size();
    std::vector<std::vector<std::vector<StateIndex>>> preds(
        ni + a.outputs().size(), std::vector<std::vector<StateIndex>>(a.num_states()));
    for (StateIndex x = 0; x < a.num_states(); ++x) {
        for (SymbolIndex i = 0; i < ni; ++i)
            if (const auto& e = a.input_step(x, i))
                preds[i][*e].push_back(x);
        for (SymbolIndex o = 0; o < a.outputs().size(); ++o)
            if (const auto& e = a.output_step(x, o))
                preds[ni + o][*e].push_back(x);
    }
    return preds;
}

PairRule uncertain_rule(const PartialMealyMachine& m) {
    PairRule rule;
    rule.states = m.num_states();
    rule.predecessors = mealy_predecessors(m);
    rule.keep = [&m](StateIndex x, StateIndex y, const Relation& r) {
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i) {
            const auto& a = m.step(x, i);
            const auto& b = m.step(y, i);
            if (a && b && (a->output != b->output || !r.contains(a->target, b->target)))
                return false;
        }
        return true;
    };
    return rule;
}

PairRule bisim_rule(const PartialMealyMachine& m) {
    PairRule rule;
    rule.states = m.num_states();
    rule.predecessors = mealy_predecessors(m);
    rule.keep = [&m](StateIndex x, StateIndex y, const Relation& r) {
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i) {
            const auto& a = m.step(x, i);
            const auto& b = m.step(y, i);
            if (a.has_value() != b.has_value())
                return false;
            if (a && (a->output != b->output || !r.contains(a->target, b->target)))
                return false;
        }
        return true;
    };
    return rule;
}

bool ioco_clauses(const SuspensionAutomaton& a, StateIndex x, StateIndex y, const Relation& r) {
    for (SymbolIndex i = 0; i < a.inputs().size(); ++i) {
        const auto& u = a.input_step(x, i);
        const auto& v = a.input_step(y, i);
        if (u && v && !r.contains(*u, *v))
            return false;
    }
    for (SymbolIndex o = 0; o < a.outputs().size(); ++o) {
        const auto& u = a.output_step(x, o);
        const auto& v = a.output_step(y, o);
        if (u && v && r.contains(*u, *v))
            return true;
    }
    return false;
}

PairRule ioco_rule(const SuspensionAutomaton& a) {
    PairRule rule;
    rule.states = a.num_states();
    rule.predecessors = sa_predecessors(a);
    rule.keep = [&a](StateIndex x, StateIndex y, const Relation& r) { return ioco_clauses(a, x, y, r); };
    return rule;
}

void check_square(const Relation& r, std::size_t n, const char* what) {
    if (r.left_size() != n || r.right_size() != n)
        throw ContractViolation(std::string(what) + ": relation is not over the system's states");
}

template <class System>
bool lifting_post_fixpoint(const System& s, const Relation& r) {
    check_square(r, s.num_states(), "relation_is_uncertain_bisimulation");
    for (const auto& [x, y] : r.pairs())
        if (!in_uncertain_lifting(r, s.structure(x), s.structure(y)))
            return false;
    return true;
}

template <class System>
Relation lifting_fixpoint(const System& s) {
    // The lifting test also reads which states have R-successors at all, so the
    // worklist's predecessor bookkeeping does not apply; rounds are used instead.
    PairRule rule;
    rule.states = s.num_states();
    rule.keep = [&s](StateIndex x, StateIndex y, const Relation& r) {
        return in_uncertain_lifting(r, s.structure(x), s.structure(y));
    };
    return greatest_fixpoint(rule, Execution::serial);
}

void check_state(const PartialMealyMachine& m, StateIndex x) {
    if (x >= m.num_states())
        throw ValidationError("state index " + std::to_string(x) + " out of range");
}

}  // namespace

Relation uncertain_bisimilarity(const PartialMealyMachine& m, Execution execution) {
    return greatest_fixpoint(uncertain_rule(m), execution);
}

std::vector<Relation> uncertain_bisimilarity_rounds(const PartialMealyMachine& m) {
    return fixpoint_iterates(uncertain_rule(m));
}

Relation bisimilarity(const PartialMealyMachine& m, Execution execution) {
    return greatest_fixpoint(bisim_rule(m), execution);
}

Relation ioco_compatibility(const SuspensionAutomaton& a, Execution execution) {
    return greatest_fixpoint(ioco_rule(a), execution);
}

std::vector<Relation> ioco_compatibility_rounds(const SuspensionAutomaton& a) {
    return fixpoint_iterates(ioco_rule(a));
}

bool is_ioco_compatibility_relation(const SuspensionAutomaton& a, const Relation& r) {
    check_square(r, a.num_states(), "is_ioco_compatibility_relation");
    for (const auto& [x, y] : r.pairs())
        if (!ioco_clauses(a, x, y, r))
            return false;
    return true;
}

bool relation_is_uncertain_bisimulation(const PartialMealyMachine& m, const Relation& r) {
    return lifting_post_fixpoint(m, r);
}

bool relation_is_uncertain_bisimulation(const SuspensionAutomaton& a, const Relation& r) {
    return lifting_post_fixpoint(a, r);
}

bool relation_is_uncertain_bisimulation(const PowersetSystem& p, const Relation& r) {
    return lifting_post_fixpoint(p, r);
}

Relation uncertain_bisimilarity_by_lifting(const PartialMealyMachine& m) { return lifting_fixpoint(m); }
Relation uncertain_bisimilarity_by_lifting(const SuspensionAutomaton& a) { return lifting_fixpoint(a); }
Relation uncertain_bisimilarity_by_lifting(const PowersetSystem& p) { return lifting_fixpoint(p); }

std::optional<ApartnessWitness> apartness_witness(const PartialMealyMachine& m, StateIndex x, StateIndex y) {
    check_state(m, x);
    check_state(m, y);
    const std::size_t n = m.num_states();
    struct Visit {
        StatePair parent;
        SymbolIndex input;
    };
    std::vector<std::optional<Visit>> seen(n * n);
    auto word_to = [&](StatePair p) {
        Word w;
        while (p != StatePair{x, y}) {
            const auto& v = *seen[p.first * n + p.second];
            w.push_back(v.input);
            p = v.parent;
        }
        return Word(w.rbegin(), w.rend());
    };

    std::deque<StatePair> queue{{x, y}};
    seen[x * n + y] = Visit{{x, y}, 0};
    while (!queue.empty()) {
        const StatePair p = queue.front();
        queue.pop_front();
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i) {
            const auto& a = m.step(p.first, i);
            const auto& b = m.step(p.second, i);
            if (!a || !b)
                continue;
            if (a->output != b->output) {
                Word w = word_to(p);
                w.push_back(i);
                return ApartnessWitness{std::move(w), a->output, b->output};
            }
            const StatePair next{a->target, b->target};
            if (!seen[next.first * n + next.second]) {
                seen[next.first * n + next.second] = Visit{p, i};
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

std::uint64_t enumeration_budget_from_env() {
    if (const char* text = std::getenv("UBISIM_ENUM_BUDGET")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(text, &end, 10);
        if (end != text && *end == '\0' && value > 0)
            return value;
    }
    return default_enumeration_budget;
}

OracleVerdict semantic_oracle_uncertain(const PartialMealyMachine& m, StateIndex x, StateIndex y,
                                        std::uint64_t budget) {
    check_state(m, x);
    check_state(m, y);
    const std::size_t max_length = m.num_states() * m.num_states();
    OracleVerdict verdict;
    Word word;
    bool exhausted = false;

    // Depth-first over words, carrying the two states reached so far.
    auto explore = [&](auto&& self, StateIndex u, StateIndex v) -> void {
        if (word.size() == max_length)
            return;
        for (SymbolIndex i = 0; i < m.inputs().size() && !exhausted && !verdict.conflict; ++i) {
            const auto& a = m.step(u, i);
            const auto& b = m.step(v, i);
            if (!a || !b)
                continue;
            if (++verdict.words_examined > budget) {
                exhausted = true;
                return;
            }
            word.push_back(i);
            if (a->output != b->output)
                verdict.conflict = word;
            else
                self(self, a->target, b->target);
            word.pop_back();
        }
    };
    explore(explore, x, y);

    if (!exhausted) {
        verdict.uncertain_bisimilar = !verdict.conflict.has_value();
        return verdict;
    }

    // Budget exceeded: decide by reachability of a conflicting pair instead.
    verdict.method = OracleMethod::reachability;
    verdict.conflict.reset();
    const std::size_t n = m.num_states();
    std::vector<std::optional<std::pair<StatePair, SymbolIndex>>> parent(n * n);
    std::vector<std::uint8_t> seen(n * n, 0);
    std::deque<StatePair> queue{{x, y}};
    seen[x * n + y] = 1;
    while (!queue.empty() && !verdict.conflict) {
        const StatePair p = queue.front();
        queue.pop_front();
        for (SymbolIndex i = 0; i < m.inputs().size(); ++i) {
            const auto& a = m.step(p.first, i);
            const auto& b = m.step(p.second, i);
            if (!a || !b)
                continue;
            if (a->output != b->output) {
                Word w{i};
                for (StatePair q = p; parent[q.first * n + q.second]; q = parent[q.first * n + q.second]->first)
                    w.push_back(parent[q.first * n + q.second]->second);
                verdict.conflict = Word(w.rbegin(), w.rend());
                break;
            }
            const std::size_t k = a->target * n + b->target;
            if (!seen[k]) {
                seen[k] = 1;
                parent[k] = std::pair{p, i};
                queue.emplace_back(a->target, b->target);
            }
        }
    }
    verdict.uncertain_bisimilar = !verdict.conflict.has_value();
    return verdict;
}

}  // namespace ubisim
