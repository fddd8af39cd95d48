// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "insarfopt/comms.hpp"
#include "insarfopt/metrics.hpp"

namespace insarfopt {

namespace {

std::vector<double> axis_values(const GridAxis& a) {
    if (a.step <= 0.0) throw std::invalid_argument("grid step must be positive");
    std::vector<double> v;
    const auto count = static_cast<int64_t>(std::floor((a.hi - a.lo) / a.step + 1e-9)) + 1;
    v.reserve(static_cast<size_t>(std::max<int64_t>(count, 0)));
    for (int64_t i = 0; i < count; ++i) v.push_back(a.lo + static_cast<double>(i) * a.step);
    return v;
}

// Scenario constants hoisted out of the per-point loop; every check below is
// O(1) in the slot count.
struct PointEvaluator {
    const ScenarioConfig& s;
    double xt, tan1, sin1, sec1, tf, tn;
    double cmin;        // most restrictive slot's radar constant
    double inv_g2;      // 1/gamma_snr_min^2
    double covfac;      // delta_t * sum(v_y)
    double dy2max, sumdy2;  // along-track-to-GS precomputations
    double kfac[2];     // 2^(R_min/B_c) - 1 per UAV
    double lam_t;       // lambda * tan(theta1)

    explicit PointEvaluator(const ScenarioConfig& sc) : s(sc) {
        xt = s.mission.target_x;
        tan1 = std::tan(s.radar.theta_d);
        sin1 = std::sin(s.radar.theta_d);
        sec1 = std::sqrt(tan1 * tan1 + 1.0);
        tf = std::tan(s.radar.theta_far());
        tn = std::tan(s.radar.theta_near());
        cmin = std::numeric_limits<double>::infinity();
        covfac = 0.0;
        for (int n = 0; n < s.mission.num_slots; ++n) {
            cmin = std::min(cmin, radar_constant(s, n));
            covfac += s.mission.slot_duration * s.mission.v_y[static_cast<size_t>(n)];
        }
        const double g = s.thresholds.gamma_snr_min;
        inv_g2 = 1.0 / (g * g);
        const std::vector<double> y = along_track_positions(s.mission);
        dy2max = 0.0;
        sumdy2 = 0.0;
        for (int n = 0; n < s.mission.num_slots; ++n) {
            const double dy = y[static_cast<size_t>(n)] - s.mission.ground_station[1];
            dy2max = std::max(dy2max, dy * dy);
            sumdy2 += dy * dy;
        }
        for (int i = 0; i < 2; ++i)
            kfac[i] = std::exp2(s.comm.r_min[static_cast<size_t>(i)] /
                                s.comm.bandwidth[static_cast<size_t>(i)]) -
                      1.0;
        lam_t = s.radar.lambda * tan1;
    }

    // C9-C11 for one UAV at horizontal-plane offset-squared hor2 from the GS.
    bool power_ok(double hor2, int uav) const {
        const double scale = kfac[uav] / s.comm.gamma * (1.0 + 1e-12);
        if (scale * (hor2 + dy2max) > s.comm.p_com_max) return false;
        const double energy = scale * s.mission.slot_duration *
                              (static_cast<double>(s.mission.num_slots) * hor2 + sumdy2);
        return energy <= s.comm.e_com;
    }

    struct MasterCache {
        double x1, r1, fac1, near1, far1, z1;
        bool ok;
    };

    MasterCache master(double z1) const {
        MasterCache m{};
        m.z1 = z1;
        m.x1 = xt - z1 * tan1;
        m.r1 = z1 * sec1;
        m.fac1 = 1.0 + m.r1 * m.r1 * m.r1 * sin1 / cmin;
        m.near1 = m.x1 + z1 * tn;
        m.far1 = m.x1 + z1 * tf;
        const double dx = m.x1 - s.mission.ground_station[0];
        const double dz = z1 - s.mission.ground_station[2];
        m.ok = z1 >= s.thresholds.z_min && z1 <= s.thresholds.z_max &&
               power_ok(dx * dx + dz * dz, 0);
        return m;
    }

    // Coverage if (m, x2, z2) is feasible; negative infinity otherwise.
    double coverage_if_feasible(const MasterCache& m, double x2, double z2) const {
        const auto& t = s.thresholds;
        if (!m.ok || z2 < t.z_min || z2 > t.z_max || x2 > xt) return -1.0;
        const double w2 = xt - x2;
        const double r2sq = w2 * w2 + z2 * z2;
        if (r2sq > m.r1 * m.r1) return -1.0;  // C3
        const double bx = x2 - m.x1, bz = z2 - m.z1;
        if (bx * bx + bz * bz < t.b_min * t.b_min) return -1.0;  // C5
        if (m.fac1 * (1.0 + m.r1 * m.r1 * w2 / cmin) > inv_g2) return -1.0;  // C6
        const double bp = s.radar.fractional_bandwidth();
        const double sin2 = w2 / std::sqrt(r2sq);
        const double grg = ((2.0 + bp) * sin2 - (2.0 - bp) * sin1) / (bp * (sin1 + sin2));
        if (!(grg >= t.gamma_rg_min)) return -1.0;  // C7
        const double bperp = std::abs(w2 - tan1 * z2) / sec1;
        const double hval = lam_t * m.z1;  // lambda r1 sin1 = lambda tan1 z1
        if (bperp * t.h_amb_max < hval) return -1.0;  // h_amb > h_max (or bperp = 0)
        if (t.h_amb_min > 0.0 && bperp * t.h_amb_min > hval) return -1.0;  // h_amb < h_min
        const double dx = x2 - s.mission.ground_station[0];
        const double dz = z2 - s.mission.ground_station[2];
        if (!power_ok(dx * dx + dz * dz, 1)) return -1.0;  // C9-C11
        const double near = std::max(m.near1, x2 + z2 * tn);
        const double far = std::min(m.far1, x2 + z2 * tf);
        return std::max(0.0, far - near) * covfac;
    }
};

std::vector<double> minimal_schedule(const Vec2& q, const ScenarioConfig& s, int uav) {
    return min_energy_schedule(link_distances(q, s.mission), s, uav);
}

struct Best {
    double coverage = -1.0;
    Formation f;
    bool found = false;
    int64_t feasible = 0;
    int64_t evaluated = 0;

    void consider(double cov, const Formation& cand) {
        ++evaluated;
        if (cov < 0.0) return;
        ++feasible;
        if (!found || cov > coverage) {  // lex order preserved by scan order
            coverage = cov;
            f = cand;
            found = true;
        }
    }
};

}  // namespace

GridSpec GridSpec::defaults(const ScenarioConfig& s) {
    GridSpec g;
    g.z1 = {s.thresholds.z_min, s.thresholds.z_max, 1.0};
    g.z2 = g.z1;
    g.x2 = {s.mission.target_x - 120.0, s.mission.target_x, 1.0};
    return g;
}

OracleResult grid_search(const ScenarioConfig& s, const GridSpec& g, int jobs,
                         std::vector<FeasibleRow>* dump) {
    const std::vector<double> z1v = axis_values(g.z1);
    const std::vector<double> x2v = axis_values(g.x2);
    const std::vector<double> z2v = axis_values(g.z2);
    if (z1v.empty() || x2v.empty() || z2v.empty())
        throw std::invalid_argument("empty oracle grid");

    const PointEvaluator ev(s);
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(z1v.size())));

    std::vector<Best> bests(static_cast<size_t>(nthreads));
    std::vector<std::vector<FeasibleRow>> dumps(
        dump ? static_cast<size_t>(nthreads) : 0);

    auto work = [&](int tid) {
        Best& best = bests[static_cast<size_t>(tid)];
        for (size_t i1 = static_cast<size_t>(tid); i1 < z1v.size();
             i1 += static_cast<size_t>(nthreads)) {
            const auto m = ev.master(z1v[i1]);
            for (double x2 : x2v) {
                for (double z2 : z2v) {
                    const double cov = ev.coverage_if_feasible(m, x2, z2);
                    Formation cand{{m.x1, m.z1}, {x2, z2}};
                    best.consider(cov, cand);
                    if (dump && cov >= 0.0) {
                        const FeasibilityReport fr = evaluate_constraints(
                            cand, minimal_schedule(cand.master, s, 0),
                            minimal_schedule(cand.slave, s, 1), s);
                        double ms = std::numeric_limits<double>::infinity();
                        for (const auto& c : fr.constraints) ms = std::min(ms, c.slack);
                        dumps[static_cast<size_t>(tid)].push_back({cand, cov, ms});
                    }
                }
            }
        }
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) threads.emplace_back(work, t);
        for (auto& t : threads) t.join();
    }

    OracleResult out;
    // Deterministic merge: highest coverage, then lexicographic (z1, x2, z2).
    auto better = [](const Best& a, const Best& b) {
        if (!b.found) return false;
        if (!a.found) return true;
        if (a.coverage != b.coverage) return a.coverage < b.coverage;
        if (a.f.master.z != b.f.master.z) return a.f.master.z > b.f.master.z;
        if (a.f.slave.x != b.f.slave.x) return a.f.slave.x > b.f.slave.x;
        return a.f.slave.z > b.f.slave.z;
    };
    const Best* winner = &bests[0];
    for (const auto& b : bests) {
        out.evaluated += b.evaluated;
        out.feasible += b.feasible;
        if (better(*winner, b)) winner = &b;
    }
    if (dump) {
        for (auto& d : dumps) dump->insert(dump->end(), d.begin(), d.end());
        // Threads stride over z1; restore lexicographic iteration order so the
        // dump is identical for any worker count.
        std::sort(dump->begin(), dump->end(), [](const FeasibleRow& a, const FeasibleRow& b) {
            if (a.f.master.z != b.f.master.z) return a.f.master.z < b.f.master.z;
            if (a.f.slave.x != b.f.slave.x) return a.f.slave.x < b.f.slave.x;
            return a.f.slave.z < b.f.slave.z;
        });
    }
    if (!winner->found) return out;

    out.found = true;
    out.best = winner->f;
    out.coverage = winner->coverage;
    const FootprintInterval f1 = footprint(out.best.master, s.radar);
    const FootprintInterval f2 = footprint(out.best.slave, s.radar);
    out.objective_tilde = std::min(f1.far_edge, f2.far_edge) -
                          std::max(f1.near_edge, f2.near_edge);
    out.p1 = minimal_schedule(out.best.master, s, 0);
    out.p2 = minimal_schedule(out.best.slave, s, 1);
    return out;
}

OracleResult refine(const ScenarioConfig& s, const Formation& around, double radius,
                    double step, int jobs) {
    if (!(step > 0.0) || step >= radius)
        throw std::invalid_argument("refine requires 0 < step < radius");
    const double k = std::floor(radius / step);
    auto axis = [&](double center, double lo_clamp, double hi_clamp) {
        GridAxis a;
        a.step = step;
        a.lo = center - k * step;
        a.hi = center + k * step;
        // Clamp on a step-aligned lattice so the center stays on-grid.
        while (a.lo < lo_clamp) a.lo += step;
        while (a.hi > hi_clamp) a.hi -= step;
        return a;
    };
    GridSpec g;
    g.z1 = axis(around.master.z, s.thresholds.z_min, s.thresholds.z_max);
    g.z2 = axis(around.slave.z, s.thresholds.z_min, s.thresholds.z_max);
    g.x2 = axis(around.slave.x, -std::numeric_limits<double>::infinity(),
                s.mission.target_x);
    return grid_search(s, g, jobs);
}

}  // namespace insarfopt
