#pragma once

#include "ubisim/fixpoint.hpp"
#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ubisim {

/// Greatest R such that related states agree on the output of every commonly
/// defined input and move to related states. Reflexive, symmetric, not
/// transitive in general.
Relation uncertain_bisimilarity(const PartialMealyMachine& m, Execution execution = Execution::parallel);
/// Every round of the serial computation, from C × C down to the result.
std::vector<Relation> uncertain_bisimilarity_rounds(const PartialMealyMachine& m);

/// Ordinary bisimilarity: same defined inputs, equal outputs, related successors.
Relation bisimilarity(const PartialMealyMachine& m, Execution execution = Execution::parallel);

/// Greatest relation satisfying both clauses of ioco compatibility: related
/// successors on every common input, and some common output with related
/// successors.
Relation ioco_compatibility(const SuspensionAutomaton& a, Execution execution = Execution::parallel);
std::vector<Relation> ioco_compatibility_rounds(const SuspensionAutomaton& a);
/// Checks the two clauses for every pair of `r` against `r` itself.
bool is_ioco_compatibility_relation(const SuspensionAutomaton& a, const Relation& r);

/// R ⊆ (c × c)⁻¹(F̂⊑(R)), decided per pair by building a witness in F(R).
bool relation_is_uncertain_bisimulation(const PartialMealyMachine& m, const Relation& r);
bool relation_is_uncertain_bisimulation(const SuspensionAutomaton& a, const Relation& r);
bool relation_is_uncertain_bisimulation(const PowersetSystem& p, const Relation& r);

/// Greatest uncertain bisimulation computed through the generic lifting test
/// instead of the Mealy rule. Serves as a cross-check and covers powerset systems.
Relation uncertain_bisimilarity_by_lifting(const PartialMealyMachine& m);
Relation uncertain_bisimilarity_by_lifting(const SuspensionAutomaton& a);
Relation uncertain_bisimilarity_by_lifting(const PowersetSystem& p);

struct ApartnessWitness {
    Word word;
    SymbolIndex left_output = 0;
    SymbolIndex right_output = 0;

    friend bool operator==(const ApartnessWitness&, const ApartnessWitness&) = default;
};

/// Shortlex-least word on which both states produce an output and the outputs
/// differ; nullopt when the states are uncertain bisimilar.
std::optional<ApartnessWitness> apartness_witness(const PartialMealyMachine& m, StateIndex x, StateIndex y);

enum class OracleMethod { enumeration, reachability };

struct OracleVerdict {
    bool uncertain_bisimilar = true;
    OracleMethod method = OracleMethod::enumeration;
    /// A word on which both semantics are defined and differ, if one was found.
    std::optional<Word> conflict;
    std::uint64_t words_examined = 0;
};

inline constexpr std::uint64_t default_enumeration_budget = 2'000'000;

/// UBISIM_ENUM_BUDGET if set to a positive integer, else the default.
std::uint64_t enumeration_budget_from_env();

/// Brute-force semantic check: enumerate the words of length ≤ |C|² on which
/// both runs exist and compare the final outputs. Words on which one run dies
/// are pruned with all their extensions, since both semantics stay undefined
/// there. When more than `budget` words would be examined, falls back to
/// reachability in the product graph and reports method = reachability.
OracleVerdict semantic_oracle_uncertain(const PartialMealyMachine& m, StateIndex x, StateIndex y,
                                        std::uint64_t budget = enumeration_budget_from_env());

}  // namespace ubisim
