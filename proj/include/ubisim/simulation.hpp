#pragma once

#include "ubisim/bisim.hpp"
#include "ubisim/morphisms.hpp"
#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ubisim {

enum class SimulationStyle { hughes_jacobs, open_map };

const char* to_string(SimulationStyle style);

struct SimulationFailure {
    StateIndex left = 0;
    StateIndex right = 0;
    Component component = Component::input;
    SymbolIndex symbol = 0;
};

/// First pair of R (row-major) with an unmatched step. Mealy: every
/// x -i/o-> x' of the left state needs z -i/o-> z' with (x', z') ∈ R. Suspension
/// automata additionally need every z -!o-> z' matched by x -!o-> x' with
/// (x', z') ∈ R. Throws ContractViolation on alphabet or carrier mismatch.
std::optional<SimulationFailure> find_simulation_failure(const Relation& r, const PartialMealyMachine& src,
                                                         const PartialMealyMachine& dst);
std::optional<SimulationFailure> find_simulation_failure(const Relation& r, const SuspensionAutomaton& src,
                                                         const SuspensionAutomaton& dst);

/// Both styles give the same relational condition; the style matters only for
/// the span structures of a SimulationWitness.
bool check_simulation(const Relation& r, const PartialMealyMachine& src, const PartialMealyMachine& dst,
                      SimulationStyle style);
bool check_simulation(const Relation& r, const SuspensionAutomaton& src, const SuspensionAutomaton& dst,
                      SimulationStyle style);

/// Name of the pair state (l, r) in synthesized machines: "(l|r)".
std::string pair_name(const std::string& left, const std::string& right);

struct SimulationWitness {
    Relation relation;
    /// Span middle r: R → M R. Its states are relation.pairs(), in that order.
    std::optional<PartialMealyMachine> structure;
    SimulationStyle style = SimulationStyle::hughes_jacobs;
};

/// Witness whose π1 is oplax and π2 lax. Each pair takes the left state's
/// transitions, paired with a matching right successor, and additionally any
/// right transition the left state lacks when its target has an R-predecessor.
/// nullopt when R is not a simulation.
std::optional<SimulationWitness> canonical_hj_witness(const Relation& r, const PartialMealyMachine& src,
                                                      const PartialMealyMachine& dst);

/// Checks the projections of the span against the declared style:
/// HJ needs π1 oplax and π2 lax, open-map needs π1 strict and π2 lax.
bool verify_witness(const SimulationWitness& w, const PartialMealyMachine& src, const PartialMealyMachine& dst);

/// Restricts the span along π1 so that π1 becomes strict. Throws
/// ContractViolation for a witness without structure or not in HJ style.
SimulationWitness hj_to_openmap(const SimulationWitness& w, const PartialMealyMachine& src,
                                const PartialMealyMachine& dst);
/// Always throws UnsupportedError.
SimulationWitness hj_to_openmap(const SimulationWitness& w, const SuspensionAutomaton& src,
                                const SuspensionAutomaton& dst);

struct SpanStructure {
    std::vector<StatePair> pairs;
    /// States are `pairs` in order.
    PartialMealyMachine structure;
};

struct SpanFailure {
    StateIndex left = 0;
    StateIndex right = 0;
    SymbolIndex input = 0;
    std::string reason;
};

/// Builds r: R → M R by the join case table. Throws ContractViolation when R
/// is not reflexive on the machine's states.
std::variant<SpanStructure, SpanFailure> synthesize_span_structure(const PartialMealyMachine& m, const Relation& r);

struct JointSimulator {
    /// States are the pairs of `carrier`, named by pair_name.
    PartialMealyMachine join;
    StateIndex joint_state = 0;
    std::vector<StatePair> carrier;
    /// {(u, (u, v))} and {(v, (u, v))} from the machine into the join.
    Relation left_simulation;
    Relation right_simulation;
};

/// The join machine on the pairs reachable from (x, y), or the apartness
/// witness if x and y are apart.
std::variant<JointSimulator, ApartnessWitness> joint_simulator(const PartialMealyMachine& m, StateIndex x,
                                                               StateIndex y);

struct SaJointSimulator {
    SuspensionAutomaton join;
    StateIndex joint_state = 0;
    std::vector<StatePair> carrier;
    Relation left_simulation;
    Relation right_simulation;
};

/// Joint conforming state for ioco-compatible x and y: inputs of both, and
/// only those common outputs whose successor pair is compatible. nullopt when
/// (x, y) is not ioco compatible.
std::optional<SaJointSimulator> joint_simulator(const SuspensionAutomaton& a, StateIndex x, StateIndex y);

}  // namespace ubisim
