// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace insarfopt {

double baseline(const Formation& f) {
    return std::hypot(f.slave.x - f.master.x, f.slave.z - f.master.z);
}

FootprintInterval footprint(const Vec2& q, const RadarParams& r) {
    return {q.x + std::tan(r.theta_near()) * q.z, q.x + std::tan(r.theta_far()) * q.z};
}

double swath(const Formation& f, const RadarParams& r) {
    const FootprintInterval a = footprint(f.master, r);
    const FootprintInterval b = footprint(f.slave, r);
    const double s = std::min(a.far_edge, b.far_edge) - std::max(a.near_edge, b.near_edge);
    return std::max(0.0, s);
}

double coverage(const Formation& f, const MissionConfig& m, const RadarParams& r) {
    const double total_v = std::accumulate(m.v_y.begin(), m.v_y.end(), 0.0);
    return swath(f, r) * m.slot_duration * total_v;
}

std::pair<double, double> slant_ranges(const Formation& f, double x_t) {
    return {std::hypot(f.master.x - x_t, f.master.z),
            std::hypot(f.slave.x - x_t, f.slave.z)};
}

double master_x_for(double z1, double x_t, double theta_d) {
    return x_t - z1 * std::tan(theta_d);
}

double look_angle_master(double theta_d) { return theta_d; }

double sin_look_angle_slave(const Vec2& q2, double x_t) {
    const double r2 = std::hypot(q2.x - x_t, q2.z);
    if (r2 == 0.0) return 0.0;
    return (x_t - q2.x) / r2;
}

double perpendicular_baseline(const Vec2& q2, double x_t, double theta1) {
    const double t = std::tan(theta1);
    return std::abs((x_t - q2.x) - t * q2.z) / std::sqrt(t * t + 1.0);
}

Vec2 projection_point(const Vec2& q2, double x_t, double theta1) {
    const double t = std::tan(theta1);
    const double denom = t * t + 1.0;
    Vec2 p;
    p.x = (x_t + t * t * q2.x - t * q2.z) / denom;
    p.z = (t * (x_t - q2.x) + q2.z) / denom;
    return p;
}

}  // namespace insarfopt
