// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "insarfopt/comms.hpp"

namespace insarfopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPlacementTol = 1e-6;  // C2 absolute tolerance [m]
}  // namespace

bool FeasibilityReport::feasible() const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [](const ConstraintRecord& c) { return c.satisfied; });
}

const ConstraintRecord& FeasibilityReport::at(const std::string& name) const {
    for (const auto& c : constraints)
        if (c.name == name) return c;
    throw std::out_of_range("no constraint record named " + name);
}

double snr_master(const Formation& f, const ScenarioConfig& s, int slot) {
    const auto [r1, r2] = slant_ranges(f, s.mission.target_x);
    const double sin1 = std::sin(look_angle_master(s.radar.theta_d));
    return radar_constant(s, slot) / (r1 * r1 * r1 * sin1);
}

double snr_slave(const Formation& f, const ScenarioConfig& s, int slot) {
    const auto [r1, r2] = slant_ranges(f, s.mission.target_x);
    const double off = s.mission.target_x - f.slave.x;  // r2 sin(theta2)
    if (off == 0.0) return kInf;
    return radar_constant(s, slot) / (r1 * r1 * off);
}

double gamma_snr(const Formation& f, const ScenarioConfig& s, int slot) {
    // Written with inverse-SNR terms so an infinite SNR contributes exactly 1.
    const double inv1 = 1.0 / snr_master(f, s, slot);
    const double snr2 = snr_slave(f, s, slot);
    const double inv2 = std::isinf(snr2) ? 0.0 : 1.0 / snr2;
    return 1.0 / (std::sqrt(1.0 + inv1) * std::sqrt(1.0 + inv2));
}

double gamma_rg(const Vec2& q2, const ScenarioConfig& s) {
    const double bp = s.radar.fractional_bandwidth();
    const double sin1 = std::sin(look_angle_master(s.radar.theta_d));
    const double sin2 = sin_look_angle_slave(q2, s.mission.target_x);
    return ((2.0 + bp) * sin2 - (2.0 - bp) * sin1) / (bp * (sin1 + sin2));
}

double height_of_ambiguity(const Formation& f, const ScenarioConfig& s) {
    const double theta1 = look_angle_master(s.radar.theta_d);
    const double bp = perpendicular_baseline(f.slave, s.mission.target_x, theta1);
    if (bp == 0.0) return kInf;
    const auto [r1, r2] = slant_ranges(f, s.mission.target_x);
    return s.radar.lambda * r1 * std::sin(theta1) / bp;
}

MetricsReport compute_metrics(const Formation& f, const ScenarioConfig& s) {
    MetricsReport m;
    const int n_slots = s.mission.num_slots;
    m.snr1.reserve(static_cast<size_t>(n_slots));
    m.snr2.reserve(static_cast<size_t>(n_slots));
    m.gamma_snr.reserve(static_cast<size_t>(n_slots));
    for (int n = 0; n < n_slots; ++n) {
        m.snr1.push_back(snr_master(f, s, n));
        m.snr2.push_back(snr_slave(f, s, n));
        m.gamma_snr.push_back(gamma_snr(f, s, n));
    }
    m.gamma_rg = gamma_rg(f.slave, s);
    m.h_amb = height_of_ambiguity(f, s);
    m.b_perp = perpendicular_baseline(f.slave, s.mission.target_x,
                                      look_angle_master(s.radar.theta_d));
    m.baseline = baseline(f);
    return m;
}

FeasibilityReport evaluate_constraints(const Formation& f,
                                       const std::vector<double>& p1,
                                       const std::vector<double>& p2,
                                       const ScenarioConfig& s) {
    FeasibilityReport rep;
    const auto& t = s.thresholds;
    auto add = [&rep](std::string name, double slack, std::string desc) {
        rep.constraints.push_back({std::move(name), slack >= 0.0, slack, std::move(desc)});
    };

    const double c1 = std::min(std::min(f.master.z - t.z_min, t.z_max - f.master.z),
                               std::min(f.slave.z - t.z_min, t.z_max - f.slave.z));
    add("C1", c1, "altitude box, worst UAV/side margin [m]");

    const double x1_rule = master_x_for(f.master.z, s.mission.target_x, s.radar.theta_d);
    add("C2", kPlacementTol - std::abs(f.master.x - x1_rule),
        "master placement rule, tolerance minus deviation [m]");

    const auto [r1, r2] = slant_ranges(f, s.mission.target_x);
    add("C3", r1 - r2, "slant range ordering r1 - r2 [m]");

    add("C4", s.mission.target_x - f.slave.x, "side-looking bound x_t - x2 [m]");

    const double b = baseline(f);
    add("C5", b * b - t.b_min * t.b_min, "separation, squared form b^2 - b_min^2 [m^2]");

    double worst_gsnr = kInf;
    for (int n = 0; n < s.mission.num_slots; ++n)
        worst_gsnr = std::min(worst_gsnr, gamma_snr(f, s, n));
    add("C6", worst_gsnr - t.gamma_snr_min, "SNR decorrelation floor, worst slot");

    add("C7", gamma_rg(f.slave, s) - t.gamma_rg_min, "baseline decorrelation floor");

    const double h = height_of_ambiguity(f, s);
    const double c8 = std::isinf(h) ? -1e12 : std::min(h - t.h_amb_min, t.h_amb_max - h);
    add("C8", c8, "height-of-ambiguity window, worst side [m]");

    const PowerCheck pc1 = check_power_constraints(p1, s);
    const PowerCheck pc2 = check_power_constraints(p2, s);
    add("C9", std::min(pc1.c9_slack, pc2.c9_slack), "power box, worst UAV/slot [W]");

    const std::vector<double> d1 = link_distances(f.master, s.mission);
    const std::vector<double> d2 = link_distances(f.slave, s.mission);
    double worst_rate = kInf;
    for (size_t n = 0; n < d1.size(); ++n) {
        worst_rate = std::min(worst_rate, throughput(p1[n], d1[n], s.comm.bandwidth[0],
                                                     s.comm.gamma) - s.comm.r_min[0]);
        worst_rate = std::min(worst_rate, throughput(p2[n], d2[n], s.comm.bandwidth[1],
                                                     s.comm.gamma) - s.comm.r_min[1]);
    }
    add("C10", worst_rate, "rate floor, worst UAV/slot [bit/s]");

    add("C11", std::min(pc1.c11_slack, pc2.c11_slack), "energy budget, worst UAV [J]");
    return rep;
}

}  // namespace insarfopt
