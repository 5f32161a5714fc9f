#include "ubisim/simulation.hpp"

#include "ubisim/error.hpp"

#include <deque>
#include <map>

namespace ubisim {

const char* to_string(SimulationStyle style) {
    return style == SimulationStyle::hughes_jacobs ? "hj" : "openmap";
}

std::string pair_name(const std::string& left, const std::string& right) { return "(" + left + "|" + right + ")"; }

namespace {

template <class System>
void check_carriers(const Relation& r, const System& src, const System& dst) {
    if (!(src.inputs() == dst.inputs()) || !(src.outputs() == dst.outputs()))
        throw ContractViolation("simulation: alphabets differ");
    if (r.left_size() != src.num_states() || r.right_size() != dst.num_states())
        throw ContractViolation("simulation: relation is not over the two machines' states");
}

std::vector<std::string> pair_names(const std::vector<StatePair>& pairs, const Names& left, const Names& right) {
    std::vector<std::string> names;
    for (const auto& [l, r] : pairs)
        names.push_back(pair_name(left[l], right[r]));
    return names;
}

std::map<StatePair, StateIndex> index_pairs(const std::vector<StatePair>& pairs) {
    std::map<StatePair, StateIndex> out;
    for (StateIndex k = 0; k < pairs.size(); ++k)
        out.emplace(pairs[k], k);
    return out;
}

std::pair<MealyMap, MealyMap> projections(const SimulationWitness& w, const PartialMealyMachine& src,
                                          const PartialMealyMachine& dst) {
    const auto pairs = w.relation.pairs();
    std::vector<StateIndex> first, second;
    for (const auto& [l, r] : pairs) {
        first.push_back(l);
        second.push_back(r);
    }
    auto middle = std::make_shared<const PartialMealyMachine>(*w.structure);
    return {MealyMap("pi1", middle, std::make_shared<const PartialMealyMachine>(src), std::move(first)),
            MealyMap("pi2", middle, std::make_shared<const PartialMealyMachine>(dst), std::move(second))};
}

}  // namespace

std::optional<SimulationFailure> find_simulation_failure(const Relation& r, const PartialMealyMachine& src,
                                                         const PartialMealyMachine& dst) {
    check_carriers(r, src, dst);
    for (const auto& [x, z] : r.pairs())
        for (SymbolIndex i = 0; i < src.inputs().size(); ++i) {
            const auto& a = src.step(x, i);
            if (!a)
                continue;
            const auto& b = dst.step(z, i);
            if (!b || b->output != a->output || !r.contains(a->target, b->target))
                return SimulationFailure{x, z, Component::input, i};
        }
    return std::nullopt;
}

std::optional<SimulationFailure> find_simulation_failure(const Relation& r, const SuspensionAutomaton& src,
                                                         const SuspensionAutomaton& dst) {
    check_carriers(r, src, dst);
    for (const auto& [x, z] : r.pairs()) {
        for (SymbolIndex i = 0; i < src.inputs().size(); ++i) {
            const auto& a = src.input_step(x, i);
            if (!a)
                continue;
            const auto& b = dst.input_step(z, i);
            if (!b || !r.contains(*a, *b))
                return SimulationFailure{x, z, Component::input, i};
        }
        for (SymbolIndex o = 0; o < src.outputs().size(); ++o) {
            const auto& b = dst.output_step(z, o);
            if (!b)
                continue;
            const auto& a = src.output_step(x, o);
            if (!a || !r.contains(*a, *b))
                return SimulationFailure{x, z, Component::output, o};
        }
    }
    return std::nullopt;
}

bool check_simulation(const Relation& r, const PartialMealyMachine& src, const PartialMealyMachine& dst,
                      SimulationStyle) {
    return !find_simulation_failure(r, src, dst);
}

bool check_simulation(const Relation& r, const SuspensionAutomaton& src, const SuspensionAutomaton& dst,
                      SimulationStyle) {
    return !find_simulation_failure(r, src, dst);
}

std::optional<SimulationWitness> canonical_hj_witness(const Relation& r, const PartialMealyMachine& src,
                                                      const PartialMealyMachine& dst) {
    if (find_simulation_failure(r, src, dst))
        return std::nullopt;
    const auto pairs = r.pairs();
    const auto index = index_pairs(pairs);
    const std::size_t ni = src.inputs().size();
    std::vector<std::optional<MealyStep>> delta(pairs.size() * ni);
    for (StateIndex k = 0; k < pairs.size(); ++k) {
        const auto [x, z] = pairs[k];
        for (SymbolIndex i = 0; i < ni; ++i) {
            const auto& a = src.step(x, i);
            const auto& b = dst.step(z, i);
            if (a) {
                delta[k * ni + i] = MealyStep{a->output, index.at({a->target, b->target})};
            } else if (b) {
                for (StateIndex l = 0; l < src.num_states(); ++l)
                    if (r.contains(l, b->target)) {
                        delta[k * ni + i] = MealyStep{b->output, index.at({l, b->target})};
                        break;
                    }
            }
        }
    }
    PartialMealyMachine structure("span", src.inputs(), src.outputs(),
                                  Names(pair_names(pairs, src.states(), dst.states())), std::move(delta));
    return SimulationWitness{r, std::move(structure), SimulationStyle::hughes_jacobs};
}

bool verify_witness(const SimulationWitness& w, const PartialMealyMachine& src, const PartialMealyMachine& dst) {
    check_carriers(w.relation, src, dst);
    if (!w.structure)
        return check_simulation(w.relation, src, dst, w.style);
    if (w.structure->num_states() != w.relation.size())
        return false;
    const auto [pi1, pi2] = projections(w, src, dst);
    const MorphismKind first = w.style == SimulationStyle::open_map ? MorphismKind::strict : MorphismKind::oplax;
    return check_morphism(pi1, first).ok() && check_morphism(pi2, MorphismKind::lax).ok();
}

SimulationWitness hj_to_openmap(const SimulationWitness& w, const PartialMealyMachine& src,
                                const PartialMealyMachine& dst) {
    if (!w.structure)
        throw ContractViolation("hj_to_openmap: witness has no span structure");
    if (w.style != SimulationStyle::hughes_jacobs)
        throw ContractViolation("hj_to_openmap: witness is not in Hughes-Jacobs style");
    check_carriers(w.relation, src, dst);
    const auto [pi1, pi2] = projections(w, src, dst);
    return SimulationWitness{w.relation, restrict_along(pi1), SimulationStyle::open_map};
}

SimulationWitness hj_to_openmap(const SimulationWitness&, const SuspensionAutomaton&, const SuspensionAutomaton&) {
    throw UnsupportedError("hj_to_openmap is only provided for partial Mealy machines");
}

std::variant<SpanStructure, SpanFailure> synthesize_span_structure(const PartialMealyMachine& m, const Relation& r) {
    if (r.left_size() != m.num_states() || !r.is_reflexive())
        throw ContractViolation("synthesize_span_structure: relation must be reflexive on the machine's states");
    const auto pairs = r.pairs();
    const auto index = index_pairs(pairs);
    const std::size_t ni = m.inputs().size();
    std::vector<std::optional<MealyStep>> delta(pairs.size() * ni);
    for (StateIndex k = 0; k < pairs.size(); ++k) {
        const auto [x, y] = pairs[k];
        for (SymbolIndex i = 0; i < ni; ++i) {
            const auto& a = m.step(x, i);
            const auto& b = m.step(y, i);
            if (a && b) {
                if (a->output != b->output)
                    return SpanFailure{x, y, i,
                                       "outputs " + m.outputs()[a->output] + " and " + m.outputs()[b->output] +
                                           " differ"};
                const auto it = index.find({a->target, b->target});
                if (it == index.end())
                    return SpanFailure{x, y, i,
                                       "successor pair " + pair_name(m.states()[a->target], m.states()[b->target]) +
                                           " is not related"};
                delta[k * ni + i] = MealyStep{a->output, it->second};
            } else if (a) {
                delta[k * ni + i] = MealyStep{a->output, index.at({a->target, a->target})};
            } else if (b) {
                delta[k * ni + i] = MealyStep{b->output, index.at({b->target, b->target})};
            }
        }
    }
    PartialMealyMachine structure("span", m.inputs(), m.outputs(), Names(pair_names(pairs, m.states(), m.states())),
                                  std::move(delta));
    return SpanStructure{pairs, std::move(structure)};
}

namespace {

// Breadth-first closure of (x, y) under `successors`, in discovery order.
template <class Successors>
std::vector<StatePair> reachable_pairs(StatePair start, Successors successors) {
    std::vector<StatePair> order{start};
    std::map<StatePair, StateIndex> seen{{start, 0}};
    for (std::size_t k = 0; k < order.size(); ++k)
        for (const StatePair& next : successors(order[k]))
            if (seen.emplace(next, order.size()).second)
                order.push_back(next);
    return order;
}

std::pair<Relation, Relation> join_simulations(std::size_t states, const std::vector<StatePair>& carrier) {
    Relation left(states, carrier.size()), right(states, carrier.size());
    for (StateIndex k = 0; k < carrier.size(); ++k) {
        left.insert(carrier[k].first, k);
        right.insert(carrier[k].second, k);
    }
    return {left, right};
}

}  // namespace

std::variant<JointSimulator, ApartnessWitness> joint_simulator(const PartialMealyMachine& m, StateIndex x,
                                                               StateIndex y) {
    if (auto witness = apartness_witness(m, x, y))
        return *witness;
    const std::size_t ni = m.inputs().size();
    // Case table: both defined -> paired successors, one defined -> diagonal.
    auto step = [&](StatePair p, SymbolIndex i) -> std::optional<std::pair<SymbolIndex, StatePair>> {
        const auto& a = m.step(p.first, i);
        const auto& b = m.step(p.second, i);
        if (a && b)
            return std::pair{a->output, StatePair{a->target, b->target}};
        if (a)
            return std::pair{a->output, StatePair{a->target, a->target}};
        if (b)
            return std::pair{b->output, StatePair{b->target, b->target}};
        return std::nullopt;
    };
    const auto carrier = reachable_pairs(StatePair{x, y}, [&](StatePair p) {
        std::vector<StatePair> out;
        for (SymbolIndex i = 0; i < ni; ++i)
            if (auto s = step(p, i))
                out.push_back(s->second);
        return out;
    });
    const auto index = index_pairs(carrier);
    std::vector<std::optional<MealyStep>> delta(carrier.size() * ni);
    for (StateIndex k = 0; k < carrier.size(); ++k)
        for (SymbolIndex i = 0; i < ni; ++i)
            if (auto s = step(carrier[k], i))
                delta[k * ni + i] = MealyStep{s->first, index.at(s->second)};

    PartialMealyMachine join("join", m.inputs(), m.outputs(), Names(pair_names(carrier, m.states(), m.states())),
                             std::move(delta));
    auto [left, right] = join_simulations(m.num_states(), carrier);
    return JointSimulator{std::move(join), 0, carrier, std::move(left), std::move(right)};
}

std::optional<SaJointSimulator> joint_simulator(const SuspensionAutomaton& a, StateIndex x, StateIndex y) {
    if (x >= a.num_states() || y >= a.num_states())
        throw ValidationError("joint_simulator: state index out of range");
    const Relation compatible = ioco_compatibility(a);
    if (!compatible.contains(x, y))
        return std::nullopt;
    const std::size_t ni = a.inputs().size();
    const std::size_t no = a.outputs().size();
    auto input = [&](StatePair p, SymbolIndex i) -> std::optional<StatePair> {
        const auto& u = a.input_step(p.first, i);
        const auto& v = a.input_step(p.second, i);
        if (u && v)
            return StatePair{*u, *v};
        if (u)
            return StatePair{*u, *u};
        if (v)
            return StatePair{*v, *v};
        return std::nullopt;
    };
    auto output = [&](StatePair p, SymbolIndex o) -> std::optional<StatePair> {
        const auto& u = a.output_step(p.first, o);
        const auto& v = a.output_step(p.second, o);
        if (u && v && compatible.contains(*u, *v))
            return StatePair{*u, *v};
        return std::nullopt;
    };
    const auto carrier = reachable_pairs(StatePair{x, y}, [&](StatePair p) {
        std::vector<StatePair> out;
        for (SymbolIndex i = 0; i < ni; ++i)
            if (auto s = input(p, i))
                out.push_back(*s);
        for (SymbolIndex o = 0; o < no; ++o)
            if (auto s = output(p, o))
                out.push_back(*s);
        return out;
    });
    const auto index = index_pairs(carrier);
    std::vector<std::optional<StateIndex>> in_delta(carrier.size() * ni), out_delta(carrier.size() * no);
    for (StateIndex k = 0; k < carrier.size(); ++k) {
        for (SymbolIndex i = 0; i < ni; ++i)
            if (auto s = input(carrier[k], i))
                in_delta[k * ni + i] = index.at(*s);
        for (SymbolIndex o = 0; o < no; ++o)
            if (auto s = output(carrier[k], o))
                out_delta[k * no + o] = index.at(*s);
    }
    SuspensionAutomaton join("join", a.inputs(), a.outputs(), Names(pair_names(carrier, a.states(), a.states())),
                             std::move(in_delta), std::move(out_delta));
    auto [left, right] = join_simulations(a.num_states(), carrier);
    return SaJointSimulator{std::move(join), 0, carrier, std::move(left), std::move(right)};
}

}  // namespace ubisim
