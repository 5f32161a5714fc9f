#pragma once

// Membership tests for the canonical relation lifting and the uncertain
// lifting (⊑ ∘ F̂R ∘ ⊒) on the three fixed functor instances.
//
// Two independent routes are provided. The direct routes decide membership
// per alphabet entry. The enumerative routes build F(R) literally (every
// structure whose successors are pairs of R), project it, and close it under
// the order; they are exponential and capped.

#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ubisim {

enum class FunctorKind { mealy, suspension, powerset };

/// Which F and which alphabets; the carrier is supplied separately.
struct StructureShape {
    FunctorKind kind = FunctorKind::mealy;
    std::size_t inputs = 0;
    std::size_t outputs = 0;

    friend bool operator==(const StructureShape&, const StructureShape&) = default;
};

StructureShape shape_of(const SuccessorStructure& t);

using StructurePair = std::pair<SuccessorStructure, SuccessorStructure>;

/// Largest carrier accepted by the enumerative routes.
inline constexpr std::size_t max_enumeration_carrier = 4;
/// Largest number of structures any enumerative route will materialise.
inline constexpr std::uint64_t max_enumerated_structures = 4'000'000;

/// (t, s) ∈ F̂(R). t ranges over R's left carrier, s over its right carrier.
/// Throws ContractViolation when the variants, alphabets or carriers disagree.
bool in_lifting(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s);

/// (t, s) ∈ ⊑ ∘ F̂(R) ∘ ⊒, decided entry by entry.
bool in_uncertain_lifting(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s);

/// Same relation as in_uncertain_lifting, decided by searching F(R) for a
/// witness w with t ⊑ Fπ1(w) and s ⊑ Fπ2(w).
bool in_uncertain_lifting_enumerative(const Relation& r, const SuccessorStructure& t, const SuccessorStructure& s);

/// Number of elements of F X for a carrier of the given size (SA: only
/// structures with at least one output).
std::uint64_t count_structures(const StructureShape& shape, std::size_t carrier);

/// Every element of F X in a fixed order (undefined before defined, lower
/// indices first). Throws SizeLimitError above max_enumerated_structures.
std::vector<SuccessorStructure> enumerate_structures(const StructureShape& shape, std::size_t carrier);

/// F̂(R) as a sorted, duplicate-free list, computed as the image of F(R).
std::vector<StructurePair> lifting_by_enumeration(const Relation& r, const StructureShape& shape);
/// The uncertain lifting as a sorted list, computed by closing F̂(R) downwards
/// in both components.
std::vector<StructurePair> uncertain_lifting_by_enumeration(const Relation& r, const StructureShape& shape);

/// Every structure below `t` in the order, over a carrier of the given size.
std::vector<SuccessorStructure> structures_below(const SuccessorStructure& t, std::size_t carrier);

struct StabilityResult {
    bool stable = true;
    /// First pair (t, s) over X on which the two sides disagree.
    std::optional<StructurePair> counterexample;
};

/// Compares F̂⊑((f × f)⁻¹ S) with (Ff × Ff)⁻¹(F̂⊑ S) on every pair of
/// structures over X = dom f. Caps: |X| ≤ 3, |Y| ≤ 4, both alphabets ≤ 2;
/// SizeLimitError beyond.
StabilityResult stability_check(const StructureShape& shape, std::span<const StateIndex> f, const Relation& s);

}  // namespace ubisim
