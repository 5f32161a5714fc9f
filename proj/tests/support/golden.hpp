#pragma once

// Golden CLI cases: tests/golden/manifest lists "<name> <exit code> <args...>"
// and <name>.out holds the expected stdout.

#include "support/fixtures.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace ubisim::testing {

struct GoldenCase {
    std::string name;
    int exit_code = 0;
    std::vector<std::string> args;
};

inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    std::istringstream in(read_text(std::string(UBISIM_GOLDEN_DIR) + "/manifest"));
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream fields(line);
        GoldenCase c;
        fields >> c.name >> c.exit_code;
        for (std::string arg; fields >> arg;) {
            if (const auto at = arg.find("@FIXTURES@"); at != std::string::npos)
                arg.replace(at, std::string("@FIXTURES@").size(), UBISIM_FIXTURE_DIR);
            c.args.push_back(arg);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::string golden_output(const GoldenCase& c) {
    return read_text(std::string(UBISIM_GOLDEN_DIR) + "/" + c.name + ".out");
}

}  // namespace ubisim::testing
