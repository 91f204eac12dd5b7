#pragma once

#include <string>
#include <vector>

#include "wavemaplab/types.hpp"

// The self-check suite behind `wavemaplab verify`: explicit-formula
// identities, exact eigenpairs, the zero mode, index tables, and geometry
// round trips, each with a measured value against a pinned tolerance.

namespace wml {

struct VerifyItem {
    std::string name;
    Real measured;
    Real tolerance;
    bool pass;
};

// d >= 3 odd runs the free-flow subset; d >= 5 odd runs everything.
// tolerance_scale != 1 is a test hook that rescales every tolerance.
std::vector<VerifyItem> run_verify(int d, int k, unsigned long long seed,
                                   Real tolerance_scale = 1.0);

}  // namespace wml
