// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "insarfopt/scenario.hpp"

namespace insarfopt {

// Across-track plane position (ground range x, altitude z).
struct Vec2 {
    double x = 0.0;
    double z = 0.0;
};

struct Formation {
    Vec2 master;  // q1
    Vec2 slave;   // q2
};

struct FootprintInterval {
    double near_edge = 0.0;
    double far_edge = 0.0;
    double width() const { return far_edge - near_edge; }
};

// ||q2 - q1||
double baseline(const Formation& f);

// Ground-range extent of one UAV's beam footprint.
FootprintInterval footprint(const Vec2& q, const RadarParams& r);

// Overlap of the two footprints, clamped at zero. Computed as
// max(0, min(far) - max(near)) in that exact order.
double swath(const Formation& f, const RadarParams& r);

// C_N = S * delta_t * sum(v_y)
double coverage(const Formation& f, const MissionConfig& m, const RadarParams& r);

// (r1, r2), slant ranges to the reference point (x_t, 0).
std::pair<double, double> slant_ranges(const Formation& f, double x_t);

// Master placement rule: x1 = x_t - z1*tan(theta_d).
double master_x_for(double z1, double x_t, double theta_d);

// Master look angle from vertical; equals theta_d under the placement rule.
double look_angle_master(double theta_d);

// sin(theta_2) = (x_t - x2)/r2, in [0,1] for side-looking slave.
double sin_look_angle_slave(const Vec2& q2, double x_t);

// |b_perp|: distance from q2 to the master line of sight. Independent of q1.
double perpendicular_baseline(const Vec2& q2, double x_t, double theta1);

// Orthogonal projection of q2 onto the master LOS line x = x_t - tan(theta1)*z
// (theta1 measured from the vertical).
Vec2 projection_point(const Vec2& q2, double x_t, double theta1);

}  // namespace insarfopt
