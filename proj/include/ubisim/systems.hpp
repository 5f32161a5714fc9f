#pragma once

// Finite systems for the three functor instances handled by the library:
// partial Mealy machines, suspension automata and finite powerset systems,
// together with their one-step successor structures and the information order
// on those structures.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ubisim {

using StateIndex = std::size_t;
using SymbolIndex = std::size_t;

/// Input word; symbols index into the machine's input alphabet.
using Word = std::vector<SymbolIndex>;

/// An ordered, duplicate-free list of names. Used for alphabets and state sets;
/// declaration order is the iteration order everywhere in the library.
class Names {
public:
    Names() = default;
    explicit Names(std::vector<std::string> names);
    Names(std::initializer_list<std::string> names) : Names(std::vector<std::string>(names)) {}

    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }
    const std::string& operator[](std::size_t index) const { return names_[index]; }
    const std::vector<std::string>& list() const noexcept { return names_; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws ValidationError when the name is not declared.
    std::size_t index_of(std::string_view name) const;

    friend bool operator==(const Names& a, const Names& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Splits "v.w.i" or "v w i" into symbols of the given alphabet. The empty
/// string is the empty word.
Word parse_word(const Names& alphabet, std::string_view text);
std::string format_word(const Names& alphabet, std::span<const SymbolIndex> word);

// --- successor structures -------------------------------------------------

struct MealyStep {
    SymbolIndex output;
    StateIndex target;

    friend auto operator<=>(const MealyStep&, const MealyStep&) = default;
};

/// One element of M X: per input either undefined or an (output, successor) pair.
struct MealyStructure {
    std::vector<std::optional<MealyStep>> entries;

    friend auto operator<=>(const MealyStructure&, const MealyStructure&) = default;
};

/// One element of S X: partial input successors and partial output successors.
struct SaStructure {
    std::vector<std::optional<StateIndex>> inputs;
    std::vector<std::optional<StateIndex>> outputs;

    bool has_output() const;
    friend auto operator<=>(const SaStructure&, const SaStructure&) = default;
};

/// One element of Pf X, kept sorted and duplicate-free.
struct PowStructure {
    std::vector<StateIndex> members;

    friend auto operator<=>(const PowStructure&, const PowStructure&) = default;
};

using SuccessorStructure = std::variant<MealyStructure, SaStructure, PowStructure>;

/// The information order: t ⊑ s means s extends the knowledge in t.
/// Mealy: every defined entry of t equals the entry of s.
/// SA: inputs of t are a sub-map of those of s, outputs of s a sub-map of those of t.
/// Pow: subset inclusion.
bool order_leq(const MealyStructure& t, const MealyStructure& s);
bool order_leq(const SaStructure& t, const SaStructure& s);
bool order_leq(const PowStructure& t, const PowStructure& s);
/// Throws ContractViolation on a variant mismatch.
bool order_leq(const SuccessorStructure& t, const SuccessorStructure& s);

/// F f applied to a structure: every successor x is replaced by f[x].
MealyStructure map_structure(const MealyStructure& t, std::span<const StateIndex> f);
SaStructure map_structure(const SaStructure& t, std::span<const StateIndex> f);
PowStructure map_structure(const PowStructure& t, std::span<const StateIndex> f);
SuccessorStructure map_structure(const SuccessorStructure& t, std::span<const StateIndex> f);

// --- partial Mealy machines -------------------------------------------------

class PartialMealyMachine {
public:
    PartialMealyMachine() = default;
    /// `delta` is row-major: delta[state * inputs.size() + input].
    /// Throws ValidationError when a transition leaves the declared alphabets or states.
    PartialMealyMachine(std::string name, Names inputs, Names outputs, Names states,
                        std::vector<std::optional<MealyStep>> delta);

    const std::string& name() const noexcept { return name_; }
    const Names& inputs() const noexcept { return inputs_; }
    const Names& outputs() const noexcept { return outputs_; }
    const Names& states() const noexcept { return states_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_transitions() const;
    bool is_total() const;

    /// Unchecked lookup.
    const std::optional<MealyStep>& step(StateIndex state, SymbolIndex input) const {
        return delta_[state * inputs_.size() + input];
    }
    std::span<const std::optional<MealyStep>> row(StateIndex state) const {
        return {delta_.data() + state * inputs_.size(), inputs_.size()};
    }
    const std::vector<std::optional<MealyStep>>& delta() const noexcept { return delta_; }

    /// c(x) as a successor structure.
    MealyStructure structure(StateIndex state) const;

    StateIndex state_index(std::string_view name) const { return states_.index_of(name); }

    friend bool operator==(const PartialMealyMachine&, const PartialMealyMachine&) = default;

private:
    std::string name_;
    Names inputs_;
    Names outputs_;
    Names states_;
    std::vector<std::optional<MealyStep>> delta_;
};

/// Name-based construction; rejects duplicate (state, input) transitions.
class MealyBuilder {
public:
    MealyBuilder(std::string name, Names inputs, Names outputs, Names states);

    MealyBuilder& add(std::string_view source, std::string_view input, std::string_view output,
                      std::string_view target);
    PartialMealyMachine build() const;

private:
    std::string name_;
    Names inputs_;
    Names outputs_;
    Names states_;
    std::vector<std::optional<MealyStep>> delta_;
};

/// A partial Mealy machine whose transition map is defined everywhere.
class TotalMealyMachine {
public:
    /// Throws ValidationError if some (state, input) has no transition.
    explicit TotalMealyMachine(PartialMealyMachine machine);

    const PartialMealyMachine& machine() const noexcept { return machine_; }

private:
    PartialMealyMachine machine_;
};

/// Fills every undefined transition with a self-loop producing `output`.
PartialMealyMachine complete_with_self_loops(const PartialMealyMachine& m, SymbolIndex output);

/// Throws ValidationError for an out-of-range state or symbol.
std::optional<StateIndex> run(const PartialMealyMachine& m, StateIndex state, std::span<const SymbolIndex> word);
/// Output of the last transition along `word`, or nullopt when the run is
/// incomplete. Throws ContractViolation for the empty word.
std::optional<SymbolIndex> eval_semantics(const PartialMealyMachine& m, StateIndex state,
                                          std::span<const SymbolIndex> word);

// --- suspension automata ----------------------------------------------------

class SuspensionAutomaton {
public:
    SuspensionAutomaton() = default;
    /// Row-major input and output successor tables. Throws ValidationError on
    /// out-of-range entries and on blocking states (no output transition).
    SuspensionAutomaton(std::string name, Names inputs, Names outputs, Names states,
                        std::vector<std::optional<StateIndex>> input_delta,
                        std::vector<std::optional<StateIndex>> output_delta);

    const std::string& name() const noexcept { return name_; }
    const Names& inputs() const noexcept { return inputs_; }
    const Names& outputs() const noexcept { return outputs_; }
    const Names& states() const noexcept { return states_; }
    std::size_t num_states() const noexcept { return states_.size(); }

    const std::optional<StateIndex>& input_step(StateIndex state, SymbolIndex input) const {
        return input_delta_[state * inputs_.size() + input];
    }
    const std::optional<StateIndex>& output_step(StateIndex state, SymbolIndex output) const {
        return output_delta_[state * outputs_.size() + output];
    }
    const std::vector<std::optional<StateIndex>>& input_delta() const noexcept { return input_delta_; }
    const std::vector<std::optional<StateIndex>>& output_delta() const noexcept { return output_delta_; }

    SaStructure structure(StateIndex state) const;
    StateIndex state_index(std::string_view name) const { return states_.index_of(name); }

    friend bool operator==(const SuspensionAutomaton&, const SuspensionAutomaton&) = default;

private:
    std::string name_;
    Names inputs_;
    Names outputs_;
    Names states_;
    std::vector<std::optional<StateIndex>> input_delta_;
    std::vector<std::optional<StateIndex>> output_delta_;
};

class SaBuilder {
public:
    SaBuilder(std::string name, Names inputs, Names outputs, Names states);

    SaBuilder& input(std::string_view source, std::string_view symbol, std::string_view target);
    SaBuilder& output(std::string_view source, std::string_view symbol, std::string_view target);
    SuspensionAutomaton build() const;

private:
    std::string name_;
    Names inputs_;
    Names outputs_;
    Names states_;
    std::vector<std::optional<StateIndex>> input_delta_;
    std::vector<std::optional<StateIndex>> output_delta_;
};

// --- finite powerset systems ------------------------------------------------

class PowersetSystem {
public:
    PowersetSystem() = default;
    PowersetSystem(std::string name, Names states, std::vector<std::vector<StateIndex>> successors);

    const std::string& name() const noexcept { return name_; }
    const Names& states() const noexcept { return states_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    const std::vector<StateIndex>& successors(StateIndex state) const { return successors_[state]; }
    PowStructure structure(StateIndex state) const { return {successors_[state]}; }

private:
    std::string name_;
    Names states_;
    std::vector<std::vector<StateIndex>> successors_;
};

// --- disjoint union ------------------------------------------------------------

/// Coproduct of systems. State `s` of part k is renamed "<name_k>.<s>";
/// `embeddings[k][s]` is its index in the union.
template <class System>
struct DisjointUnion {
    System system;
    std::vector<std::vector<StateIndex>> embeddings;
};

/// Throws ContractViolation when the alphabets differ. Equal part names are
/// disambiguated by a "#<k>" suffix.
DisjointUnion<PartialMealyMachine> disjoint_union(std::span<const PartialMealyMachine* const> parts);
DisjointUnion<PartialMealyMachine> disjoint_union(const PartialMealyMachine& left,
                                                  const PartialMealyMachine& right);
DisjointUnion<SuspensionAutomaton> disjoint_union(std::span<const SuspensionAutomaton* const> parts);
DisjointUnion<SuspensionAutomaton> disjoint_union(const SuspensionAutomaton& left,
                                                  const SuspensionAutomaton& right);

}  // namespace ubisim
