#pragma once

#include "bd3/exterior.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bd3 {

struct VerifyCheck {
    std::string name;
    bool ok;
    double value;     // the measured quantity
    double threshold; // what it was compared against
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    int failures = 0;

    std::string text() const;
};

// Runs the invariant suite on one normalized state: occupation-number
// constraints, the Borland-Dennis expansion contract, the exact low-rank
// overlap, the five-term expansions from max-overlap Slater and CIS
// approximants, hyperdeterminant invariance under seeded scrambles, and the
// class-nesting inequalities.
VerifyReport verify_state(const Trivector& t, int restarts, std::uint64_t seed);

} // namespace bd3
