#pragma once

// Line-based text format for machines, maps and relations.
//
//   mealy <name> | total-mealy <name>
//     inputs <tok>+ / outputs <tok>+ / states <tok>+ / trans <src> <in> <out> <dst>
//   sa <name>
//     inputs / outputs / states / itrans <src> <in> <dst> / otrans <src> <out> <dst>
//   map <name> from <m1> to <m2>
//     pair <src> <dst>
//   rel <name> on <m1> [x <m2>]
//     pair <left> <right>
//
// '#' starts a comment. Names are unique across a file and references must
// point to earlier sections.

#include "ubisim/morphisms.hpp"
#include "ubisim/relation.hpp"
#include "ubisim/systems.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ubisim {

struct MealySection {
    PartialMealyMachine machine;
    bool total = false;

    friend bool operator==(const MealySection&, const MealySection&) = default;
};

struct SaSection {
    SuspensionAutomaton automaton;

    friend bool operator==(const SaSection&, const SaSection&) = default;
};

using NamePair = std::pair<std::string, std::string>;

struct MapSection {
    std::string name;
    std::string from;
    std::string to;
    std::vector<NamePair> pairs;

    friend bool operator==(const MapSection&, const MapSection&) = default;
};

struct RelSection {
    std::string name;
    std::string left;
    /// Equal to `left` for a relation on one machine.
    std::string right;
    std::vector<NamePair> pairs;

    friend bool operator==(const RelSection&, const RelSection&) = default;
};

using Section = std::variant<MealySection, SaSection, MapSection, RelSection>;

struct Document {
    std::vector<Section> sections;

    const PartialMealyMachine* find_mealy(std::string_view name) const;
    const SuspensionAutomaton* find_sa(std::string_view name) const;
    const MapSection* find_map(std::string_view name) const;
    const RelSection* find_rel(std::string_view name) const;
    std::size_t transition_count() const;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Throws ParseError with the offending line number.
Document parse_document(std::string_view text);
std::string render_document(const Document& doc);

std::string render_mealy(const PartialMealyMachine& m, bool total = false);
std::string render_sa(const SuspensionAutomaton& a);

/// Resolved views of map and relation sections. Throw ContractViolation when
/// the section's machines are of the other kind.
MealyMap resolve_mealy_map(const Document& doc, const MapSection& section);
SaMap resolve_sa_map(const Document& doc, const MapSection& section);
Relation resolve_relation(const Document& doc, const RelSection& section);

/// True when `machine` names a suspension automaton section.
bool is_sa(const Document& doc, std::string_view machine);

}  // namespace ubisim
