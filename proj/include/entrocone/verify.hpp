#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace entrocone::verify {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// The full reproduction pipeline: Table 1, the witness states, the
// projector cross-check, the property suites, and the enumeration oracle.
// `seed` shifts the seeded random suites (0 is the reference run).
std::vector<CriterionResult> run_all(std::uint64_t seed = 0);

// Prints one pass/fail line per criterion; true when everything passed.
bool run_and_print(std::ostream& out, std::uint64_t seed = 0);

}  // namespace entrocone::verify
