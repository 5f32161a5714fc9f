#pragma once

#include "ubisim/format.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ubisim::testing {

inline std::string fixture_path(const std::string& name) { return std::string(UBISIM_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

inline Document load_fixture(const std::string& name) { return parse_document(read_text(fixture_path(name))); }

/// Looks up a machine that must exist in the fixture.
inline const PartialMealyMachine& mealy(const Document& doc, const std::string& name) {
    const auto* m = doc.find_mealy(name);
    if (!m)
        throw std::runtime_error("fixture has no mealy machine " + name);
    return *m;
}

inline const SuspensionAutomaton& automaton(const Document& doc, const std::string& name) {
    const auto* a = doc.find_sa(name);
    if (!a)
        throw std::runtime_error("fixture has no automaton " + name);
    return *a;
}

}  // namespace ubisim::testing
