#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kronsum::verify {

struct SuiteResult {
    std::string name;
    std::size_t instances = 0;
    double worst = 0.0;     // largest deviation seen
    double tolerance = 0.0; // bound it was checked against
    bool passed = false;
};

struct Summary {
    std::vector<SuiteResult> suites;
    bool all_passed() const;
};

// Runs the identity/equivalence suites with the given seed:
// vectorization laws, mode-product laws, diagonal and triangular
// inverse identities, solver-vs-oracle equivalence, nilpotent series
// termination, planted singularities, and scalar-vs-SIMD kernel
// agreement.
Summary run_all(std::uint64_t seed);

} // namespace kronsum::verify
