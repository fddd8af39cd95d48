// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "insarfopt/geometry.hpp"

namespace insarfopt {

// UAV-to-GS distance per slot for a UAV fixed at (x, z) in the across-track
// plane and flying the mission's along-track profile.
std::vector<double> link_distances(const Vec2& q, const MissionConfig& m);

// R = B_c log2(1 + p*gamma/d^2)
double throughput(double p, double d, double b_c, double gamma);

// p* = (2^(R_min/B_c) - 1) d^2 / gamma; exact inverse of throughput.
double min_power(double r_min, double d, double b_c, double gamma);

// Pointwise-minimal schedule meeting the per-slot rate floor (C10). The
// caller checks the power cap (C9) and energy budget (C11) afterwards.
std::vector<double> min_energy_schedule(const std::vector<double>& distances,
                                        const ScenarioConfig& s, int uav);

struct PowerCheck {
    bool c9 = false;
    bool c11 = false;
    double c9_slack = 0.0;   // worst-slot min(p, p_max - p)
    double c11_slack = 0.0;  // e_com - sum(p)*delta_t
};

PowerCheck check_power_constraints(const std::vector<double>& p, const ScenarioConfig& s);

}  // namespace insarfopt
