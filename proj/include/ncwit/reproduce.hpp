#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncwit {

struct CheckRow {
    std::string group;
    std::string name;
    double computed;
    double expected;
    double tolerance;
    bool passed;
    std::string note;
};

// Runs the worked-example suite. `only` filters by group name prefix
// ("fock", "spin1", "squeezed", "cat", "spats", "conversion",
// "beamsplitter", "robustness", "seesaw", "multipartite", "momentum",
// "classical-preservation"); empty runs everything.
std::vector<CheckRow> run_acceptance(const std::string& only = "", std::uint64_t seed = 0);

} // namespace ncwit
