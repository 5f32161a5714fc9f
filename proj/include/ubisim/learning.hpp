#pragma once

// Observation trees and a black-box teacher for active learning of Mealy
// machines. Only the data substrate is provided, not a learning algorithm.

#include "ubisim/morphisms.hpp"
#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ubisim {

/// A tree-shaped partial Mealy machine. State 0 is the root; every other state
/// has exactly one incoming transition and is named by its access word.
class ObservationTree {
public:
    /// A tree holding only the root.
    ObservationTree(Names inputs, Names outputs);

    /// Adopts a machine that is already a tree rooted at `root`, keeping its
    /// state indices and names. Throws ValidationError otherwise.
    static ObservationTree from_tree_machine(PartialMealyMachine m, StateIndex root);

    const PartialMealyMachine& machine() const noexcept { return machine_; }
    StateIndex root() const noexcept { return root_; }
    std::size_t size() const noexcept { return machine_.num_states(); }

    /// The tree extended with the path for `word`. Throws InconsistencyError
    /// carrying the clashing prefix when an existing edge has another output,
    /// ContractViolation when the lengths differ.
    ObservationTree record(const Word& word, const std::vector<SymbolIndex>& outputs) const;

    const Word& access_word(StateIndex state) const { return access_[state]; }
    std::optional<StateIndex> state_of(const Word& word) const;

    /// Name given to a new state: the dot-joined access word, "_" for the root.
    static std::string state_name(const Names& inputs, const Word& access);

private:
    ObservationTree(PartialMealyMachine m, StateIndex root, std::vector<Word> access)
        : machine_(std::move(m)), root_(root), access_(std::move(access)) {}

    PartialMealyMachine machine_;
    StateIndex root_ = 0;
    std::vector<Word> access_;
};

/// Pairs of tree states that are apart: the complement of uncertain bisimilarity.
Relation tree_apartness_frontier(const ObservationTree& tree);

struct TreeMorphismConflict {
    /// Access word of the tree state together with the failing input.
    Word word;
};

/// The unique lax morphism from the tree into `hypothesis` sending the root to
/// `root_target`, or the shortlex-first edge that cannot be matched.
std::variant<MealyMap, TreeMorphismConflict> find_lax_morphism_from_tree(
    const ObservationTree& tree, std::shared_ptr<const PartialMealyMachine> hypothesis, StateIndex root_target);

/// Answers output queries on a hidden total machine and counts them.
/// Not thread-safe: the query counter is mutated.
class Teacher {
public:
    Teacher(TotalMealyMachine hidden, StateIndex initial);

    const Names& inputs() const noexcept { return hidden_.machine().inputs(); }
    const Names& outputs() const noexcept { return hidden_.machine().outputs(); }

    /// Outputs along the run from the initial state. Throws ValidationError on
    /// unknown symbols and ContractViolation on the empty word.
    std::vector<SymbolIndex> output_query(const Word& word);
    std::uint64_t query_count() const noexcept { return queries_; }

private:
    friend struct TeacherTestAccess;

    TotalMealyMachine hidden_;
    StateIndex initial_;
    std::uint64_t queries_ = 0;
};

}  // namespace ubisim
