#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "padicr/parallel.hpp"

namespace padicr::acceptance {

enum class Scope { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the acceptance criteria; one result per criterion.  log (optional)
// receives progress lines.  record=true prints the observed empirical
// constants instead of asserting the locked ones.
std::vector<CriterionResult> run(Scope scope, std::ostream* log = nullptr, bool record = false);

}  // namespace padicr::acceptance
