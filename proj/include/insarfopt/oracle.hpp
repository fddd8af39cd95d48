// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "insarfopt/geometry.hpp"

namespace insarfopt {

struct GridAxis {
    double lo = 0.0, hi = 0.0, step = 1.0;
};

// Search lattice over the reduced decision space (x1 is eliminated by the
// master placement rule).
struct GridSpec {
    GridAxis z1, x2, z2;
    // z1, z2 over [z_min, z_max] step 1 m; x2 over [x_t - 120, x_t] step 1 m.
    static GridSpec defaults(const ScenarioConfig& s);
};

struct FeasibleRow {
    Formation f;
    double coverage = 0.0;
    double min_slack = 0.0;
};

struct OracleResult {
    bool found = false;  // false = no feasible grid point
    Formation best;
    double coverage = 0.0;         // C_N [m^2]
    double objective_tilde = 0.0;  // unclamped min(far) - max(near) at best
    std::vector<double> p1, p2;    // minimal schedules at the best point [W]
    int64_t evaluated = 0;
    int64_t feasible = 0;
};

// Exhaustive search; exact C1-C11 with analytic minimal power schedules.
// Deterministic for any `jobs`; ties broken lexicographically by (z1, x2,
// z2). `dump` (optional) receives every feasible point in iteration order.
// Throws std::invalid_argument on an empty grid.
OracleResult grid_search(const ScenarioConfig& s, const GridSpec& g, int jobs = 1,
                         std::vector<FeasibleRow>* dump = nullptr);

// Local box search: center +/- radius at the given step on all three axes,
// clamped to the scenario bounds; the center itself is always a candidate.
OracleResult refine(const ScenarioConfig& s, const Formation& around, double radius,
                    double step, int jobs = 1);

}  // namespace insarfopt
