#pragma once

#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ubisim {

/// A total map between the state sets of two systems with the same alphabets.
template <class System>
class StateMap {
public:
    /// Throws ValidationError if the table is not total or leaves the target,
    /// ContractViolation if the alphabets differ.
    StateMap(std::string name, std::shared_ptr<const System> source, std::shared_ptr<const System> target,
             std::vector<StateIndex> image);

    const std::string& name() const noexcept { return name_; }
    const System& source() const noexcept { return *source_; }
    const System& target() const noexcept { return *target_; }
    const std::shared_ptr<const System>& source_ptr() const noexcept { return source_; }
    const std::shared_ptr<const System>& target_ptr() const noexcept { return target_; }
    const std::vector<StateIndex>& image() const noexcept { return image_; }
    StateIndex operator()(StateIndex x) const { return image_[x]; }

private:
    std::string name_;
    std::shared_ptr<const System> source_;
    std::shared_ptr<const System> target_;
    std::vector<StateIndex> image_;
};

using MealyMap = StateMap<PartialMealyMachine>;
using SaMap = StateMap<SuspensionAutomaton>;

extern template class StateMap<PartialMealyMachine>;
extern template class StateMap<SuspensionAutomaton>;

enum class MorphismKind { strict, lax, oplax };
enum class Component { input, output };

const char* to_string(MorphismKind kind);
const char* to_string(Component component);

struct MorphismViolation {
    StateIndex state = 0;
    Component component = Component::input;
    SymbolIndex symbol = 0;
    /// The direction that fails: lax (Fh(c(x)) ⋢ d(h(x))) or oplax (d(h(x)) ⋢ Fh(c(x))).
    MorphismKind failed = MorphismKind::lax;
    std::string detail;
};

struct MorphismCheck {
    std::vector<MorphismViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Compares Fh(c(x)) with d(h(x)) entry by entry and reports every failing
/// (state, symbol, direction). Strict checks both directions.
MorphismCheck check_morphism(const MealyMap& h, MorphismKind kind);
MorphismCheck check_morphism(const SaMap& h, MorphismKind kind);

Relation kernel(const MealyMap& h);
Relation kernel(const SaMap& h);

/// The machine c' with c'(x)(i) = ? wherever d(h(x))(i) = ?, else c(x)(i).
/// h is strict from c' to d. Throws ContractViolation naming the first state
/// at which h is not oplax.
PartialMealyMachine restrict_along(const MealyMap& h);
/// Always throws UnsupportedError.
SuspensionAutomaton restrict_along(const SaMap& h);

struct MergeStep {
    StateIndex left = 0;
    StateIndex right = 0;
    /// Input whose transitions forced the merge; empty for the initial pair.
    std::optional<SymbolIndex> via;

    friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

struct LaxQuotient {
    std::shared_ptr<const PartialMealyMachine> quotient;
    /// The projection onto the classes; a lax morphism identifying the pair.
    MealyMap projection;
    /// Classes in quotient-state order, each sorted; ordered by least member.
    std::vector<std::vector<StateIndex>> classes;
    std::vector<MergeStep> chain;
};

struct LaxConflict {
    std::vector<MergeStep> chain;
    SymbolIndex input = 0;
    StateIndex left_state = 0;
    StateIndex right_state = 0;
    SymbolIndex left_output = 0;
    SymbolIndex right_output = 0;
    /// Quotient by the classes reached just before the clash, with one
    /// representative transition per class and input.
    PartialMealyMachine attempted;
};

using LaxIdentification = std::variant<LaxQuotient, LaxConflict>;

/// Smallest equivalence containing (x, y) that relates the successors of any
/// two related states under every commonly defined input. Conflict when a
/// class would have to contain two different outputs for one input; then no
/// lax morphism into any machine identifies x and y.
LaxIdentification lax_identify(const PartialMealyMachine& m, StateIndex x, StateIndex y);

/// "{a,b}" for a class with several members, the member's name otherwise.
std::string class_name(const Names& states, const std::vector<StateIndex>& members);

}  // namespace ubisim
