#pragma once

#include <string>
#include <vector>

namespace cscrack {

struct CheckResult {
    std::string module;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

// Cross-module invariant suite behind the `verify` command. Checks are
// independent; an exception inside one is recorded as its failure.
std::vector<CheckResult> run_invariants();

}  // namespace cscrack
