// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/sca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "insarfopt/comms.hpp"

namespace insarfopt {

namespace {

constexpr double kSolveTol = 1e-6;   // barrier duality-gap target
constexpr double kFeasTol = 1e-6;    // original-constraint acceptance tolerance
constexpr double kNudge = 1e-6;      // strictification offset for warm starts

// Affine scalar a^T y + b over the subproblem variables.
struct Aff {
    Eigen::VectorXd a;
    double b = 0.0;
    explicit Aff(int dim, double cst = 0.0) : a(Eigen::VectorXd::Zero(dim)), b(cst) {}
};

// Accumulates coef * f(y)^2 into a quadratic (Q, q, r).
void add_square(const Aff& f, double coef, Eigen::MatrixXd& Q, Eigen::VectorXd& q, double& r) {
    Q.noalias() += coef * (f.a * f.a.transpose());
    q.noalias() += (2.0 * coef * f.b) * f.a;
    r += coef * f.b * f.b;
}

void add_linear(const Aff& f, double coef, Eigen::VectorXd& q, double& r) {
    q.noalias() += coef * f.a;
    r += coef * f.b;
}

SubproblemLayout make_layout(bool has_x2, int n_slots, bool constant_power) {
    SubproblemLayout l;
    l.has_x2 = has_x2;
    int k = 0;
    if (has_x2) l.ix2 = k++;
    l.iz = k++;
    l.ip = k;
    l.np = constant_power ? 1 : n_slots;
    k += l.np;
    l.iu = k++;
    l.iw = k++;
    l.dim = k;
    return l;
}

double coord_span(const ScenarioConfig& s) {
    return 2.0 * (s.thresholds.z_max * std::max(1.0, std::tan(s.radar.theta_far())) +
                  std::abs(s.mission.target_x) + 100.0);
}

void require_feasible_point(const Formation& f, const std::vector<double>& p1,
                            const std::vector<double>& p2, const ScenarioConfig& s) {
    const FeasibilityReport rep = evaluate_constraints(f, p1, p2, s);
    for (const auto& c : rep.constraints)
        if (c.slack < -kFeasTol)
            throw std::invalid_argument("SCA expansion point violates " + c.name +
                                        " (slack " + std::to_string(c.slack) + ")");
}

// Strictified scaled power warm start meeting C9/C10 in the interior.
void fill_power_start(Eigen::VectorXd& y, const SubproblemLayout& l,
                      const std::vector<double>& d, const ScenarioConfig& s, int uav) {
    const double pmax = s.comm.p_com_max;
    auto strict = [&](double pmin) {
        return std::clamp(pmin / pmax * (1.0 + kNudge) + 1e-12, 1e-9, 1.0 - 1e-9);
    };
    if (l.np == 1) {
        double worst = 0.0;
        for (double dn : d)
            worst = std::max(worst, min_power(s.comm.r_min[static_cast<size_t>(uav)], dn,
                                              s.comm.bandwidth[static_cast<size_t>(uav)],
                                              s.comm.gamma));
        y[l.ip] = strict(worst);
    } else {
        for (int n = 0; n < l.np; ++n)
            y[l.ip + n] = strict(min_power(s.comm.r_min[static_cast<size_t>(uav)],
                                           d[static_cast<size_t>(n)],
                                           s.comm.bandwidth[static_cast<size_t>(uav)],
                                           s.comm.gamma));
    }
}

// C9 boxes, C10 per-slot quadratics, C11 energy budget. `dx` is the affine
// horizontal offset (x - x_g) and `dz` the affine (z - z_g); `cy[n]` holds the
// constant (y_n - y_g)^2 contribution.
void add_power_constraints(ConvexProgram& prog, const SubproblemLayout& l, const Aff& dx,
                           const Aff& dz, const std::vector<double>& cy,
                           const ScenarioConfig& s, int uav) {
    const double pmax = s.comm.p_com_max;
    const double bc = s.comm.bandwidth[static_cast<size_t>(uav)];
    const double rmin = s.comm.r_min[static_cast<size_t>(uav)];
    const double kfac = std::exp2(rmin / bc) - 1.0;
    const int n_slots = s.mission.num_slots;

    for (int j = 0; j < l.np; ++j) prog.add_box(l.ip + j, 0.0, 1.0, "C9");

    for (int n = 0; n < n_slots; ++n) {
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(l.dim, l.dim);
        Eigen::VectorXd q = Eigen::VectorXd::Zero(l.dim);
        double r = kfac * cy[static_cast<size_t>(n)];
        add_square(dx, kfac, Q, q, r);
        add_square(dz, kfac, Q, q, r);
        q[l.ip + (l.np == 1 ? 0 : n)] -= s.comm.gamma * pmax;
        prog.add_quadratic(Q, q, r, "C10_slot" + std::to_string(n));
    }

    Eigen::VectorXd ea = Eigen::VectorXd::Zero(l.dim);
    const double per_slot = s.mission.slot_duration * pmax;
    if (l.np == 1)
        ea[l.ip] = per_slot * static_cast<double>(n_slots);
    else
        for (int n = 0; n < n_slots; ++n) ea[l.ip + n] = per_slot;
    prog.add_affine(ea, s.comm.e_com, "C11");
}

// a* = (tan^2(theta1) + 1)(lambda tan(theta1) z1)^2; the C8 window becomes
// a*/h_max^2 <= s2^2 <= a*/h_min^2 with s2 = (x_t - x2) - tan(theta1) z2.
double c8_constant(double z1, const ScenarioConfig& s) {
    const double t = std::tan(s.radar.theta_d);
    const double v = s.radar.lambda * t * z1;
    return (t * t + 1.0) * v * v;
}

Formation lerp(const Formation& a, const Formation& b, double t, const ScenarioConfig& s) {
    Formation f;
    f.master.z = a.master.z + t * (b.master.z - a.master.z);
    f.master.x = master_x_for(f.master.z, s.mission.target_x, s.radar.theta_d);
    f.slave.x = a.slave.x + t * (b.slave.x - a.slave.x);
    f.slave.z = a.slave.z + t * (b.slave.z - a.slave.z);
    return f;
}

double min_original_slack(const Formation& f, const std::vector<double>& p1,
                          const std::vector<double>& p2, const ScenarioConfig& s) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : evaluate_constraints(f, p1, p2, s).constraints)
        worst = std::min(worst, c.slack);
    return worst;
}

}  // namespace

double objective_tilde(const Formation& f, const RadarParams& r) {
    const FootprintInterval f1 = footprint(f.master, r);
    const FootprintInterval f2 = footprint(f.slave, r);
    return std::min(f1.far_edge, f2.far_edge) - std::max(f1.near_edge, f2.near_edge);
}

double surrogate_baseline(const Vec2& q_var, const Vec2& q_fix, const Vec2& a) {
    const double b2 = (q_var.x - q_fix.x) * (q_var.x - q_fix.x) +
                      (q_var.z - q_fix.z) * (q_var.z - q_fix.z);
    const double ux = a.x - q_fix.x, uz = a.z - q_fix.z;
    return b2 - 2.0 * (ux * (2.0 * q_var.x - a.x - q_fix.x) +
                       uz * (2.0 * q_var.z - a.z - q_fix.z));
}

bool original_point_feasible(const Formation& f, const std::vector<double>& p1,
                             const std::vector<double>& p2, const ScenarioConfig& s,
                             double tol) {
    for (const auto& c : evaluate_constraints(f, p1, p2, s).constraints)
        if (c.slack < -tol) return false;
    return true;
}

std::vector<double> snapped_schedule(const Vec2& q, const ScenarioConfig& s, int uav,
                                     RunMode mode) {
    const std::vector<double> d = link_distances(q, s.mission);
    std::vector<double> p = min_energy_schedule(d, s, uav);
    if (mode == RunMode::Benchmark2) {
        const double pc = *std::max_element(p.begin(), p.end());
        std::fill(p.begin(), p.end(), pc);
    }
    return p;
}

Formation default_initialization(const ScenarioConfig& s, int index) {
    static constexpr double kOffsets[3][2] = {{60.0, 0.8}, {80.0, 0.9}, {50.0, 0.6}};
    if (index < 0 || index > 2) throw std::invalid_argument("initialization index must be 0..2");
    Formation f;
    f.master.z = s.thresholds.z_max;
    f.master.x = master_x_for(f.master.z, s.mission.target_x, s.radar.theta_d);
    f.slave.x = s.mission.target_x - kOffsets[index][0];
    f.slave.z = s.thresholds.z_max * kOffsets[index][1];
    return f;
}

BuiltSubproblem build_slave_subproblem(const Formation& f, const std::vector<double>& p1,
                                       const std::vector<double>& p2, const ScenarioConfig& s,
                                       const BuildOptions& opt) {
    require_feasible_point(f, p1, p2, s);
    const int n_slots = s.mission.num_slots;
    const SubproblemLayout l = make_layout(!opt.pin_x2.has_value(), n_slots, opt.constant_power);
    ConvexProgram prog(l.dim);

    const double xt = s.mission.target_x;
    const double theta1 = look_angle_master(s.radar.theta_d);
    const double tan1 = std::tan(theta1);
    const double sin1 = std::sin(theta1);
    const double tf = std::tan(s.radar.theta_far());
    const double tn = std::tan(s.radar.theta_near());
    const double span = coord_span(s);
    const auto [r1, r2_cur] = slant_ranges(f, xt);

    Aff x2(l.dim), z2(l.dim);
    if (l.has_x2)
        x2.a[l.ix2] = 1.0;
    else
        x2.b = *opt.pin_x2;
    z2.a[l.iz] = 1.0;

    // Objective u - w with the epigraph links to the footprint edges.
    Eigen::VectorXd c = Eigen::VectorXd::Zero(l.dim);
    c[l.iu] = 1.0;
    c[l.iw] = -1.0;
    prog.set_objective(c);

    const FootprintInterval fp1 = footprint(f.master, s.radar);
    prog.add_box(l.iu, -span, fp1.far_edge, "u_master_edge");
    prog.add_box(l.iw, fp1.near_edge, span, "w_master_edge");
    {
        Eigen::VectorXd a = -x2.a - tf * z2.a;  // u - far2 <= 0
        a[l.iu] = 1.0;
        prog.add_affine(a, x2.b + tf * z2.b, "u_slave_edge");
        Eigen::VectorXd aw = x2.a + tn * z2.a;  // near2 - w <= 0
        aw[l.iw] = -1.0;
        prog.add_affine(aw, -(x2.b + tn * z2.b), "w_slave_edge");
    }

    // C1, C4 (plus a wide conditioning box on x2).
    prog.add_box(l.iz, s.thresholds.z_min, s.thresholds.z_max, "C1");
    if (l.has_x2) prog.add_box(l.ix2, xt - span, xt, "C4");

    // C~5: b_min^2 + surrogate_baseline(q2; q1, q2^0) <= 0 (convex quadratic).
    {
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(l.dim, l.dim);
        Eigen::VectorXd q = Eigen::VectorXd::Zero(l.dim);
        double r = s.thresholds.b_min * s.thresholds.b_min;
        Aff fx = x2;
        fx.b -= f.master.x;
        Aff fz = z2;
        fz.b -= f.master.z;
        add_square(fx, 1.0, Q, q, r);
        add_square(fz, 1.0, Q, q, r);
        const double ux = f.slave.x - f.master.x, uz = f.slave.z - f.master.z;
        add_linear(x2, -4.0 * ux, q, r);
        add_linear(z2, -4.0 * uz, q, r);
        r += 2.0 * ux * (f.slave.x + f.master.x) + 2.0 * uz * (f.slave.z + f.master.z);
        prog.add_quadratic(Q, q, r, "C5~");
    }

    // C6: x_t - x2 <= min_n c_n * cap_n / r1^2 with SNR1 fixed by the master.
    {
        const double inv_g2 = 1.0 / (s.thresholds.gamma_snr_min * s.thresholds.gamma_snr_min);
        double bound = std::numeric_limits<double>::infinity();
        for (int n = 0; n < n_slots; ++n) {
            const double cn = radar_constant(s, n);
            const double inv_s1 = r1 * r1 * r1 * sin1 / cn;
            const double cap = inv_g2 / (1.0 + inv_s1) - 1.0;
            bound = std::min(bound, cn * cap / (r1 * r1));
        }
        Eigen::VectorXd a = -x2.a;
        prog.add_affine(a, bound - xt + x2.b, "C6");
    }

    // C~7: A sin(theta1) * [first-order Taylor of r2 at q2^0] <= x_t - x2.
    {
        const double bp = s.radar.fractional_bandwidth();
        const double g = s.thresholds.gamma_rg_min;
        const double A = (-g * bp - 2.0 + bp) / (g * bp - 2.0 - bp);
        if (A > 0.0) {
            const double k = A * sin1;
            const double gx = (f.slave.x - xt) / r2_cur;
            const double gz = f.slave.z / r2_cur;
            // k*(r2_0 + gx*(x2 - x2_0) + gz*(z2 - z2_0)) - (x_t - x2) <= 0
            Eigen::VectorXd a = k * gx * x2.a + k * gz * z2.a + x2.a;
            const double cst = k * (r2_cur + gx * (x2.b - f.slave.x) + gz * (z2.b - f.slave.z)) -
                               xt + x2.b;
            prog.add_affine(a, -cst, "C7~");
        }
    }

    // C~8a / C~8b: window on s2 = (x_t - x2) - tan(theta1) z2.
    {
        const double astar = c8_constant(f.master.z, s);
        Aff s2(l.dim, xt);
        s2.a = -x2.a - tan1 * z2.a;
        s2.b = xt - x2.b - tan1 * z2.b;
        if (s.thresholds.h_amb_min > 0.0) {
            Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(l.dim, l.dim);
            Eigen::VectorXd q = Eigen::VectorXd::Zero(l.dim);
            double r = -astar / (s.thresholds.h_amb_min * s.thresholds.h_amb_min);
            add_square(s2, 1.0, Q, q, r);
            prog.add_quadratic(Q, q, r, "C8a~");
        }
        const double s20 = (xt - f.slave.x) - tan1 * f.slave.z;
        Eigen::VectorXd a = -2.0 * s20 * s2.a;
        const double rhs = 2.0 * s20 * s2.b - s20 * s20 -
                           astar / (s.thresholds.h_amb_max * s.thresholds.h_amb_max);
        prog.add_affine(a, rhs, "C8b~");
    }

    // C3 as the norm bound r2(q2) <= r1 (fixed right side).
    {
        Eigen::MatrixXd A(2, l.dim);
        A.row(0) = -x2.a.transpose();
        A.row(1) = z2.a.transpose();
        Eigen::Vector2d d(xt - x2.b, z2.b);
        prog.add_norm_bound(A, d, r1, "C3");
    }

    // C9-C11 on the slave powers.
    {
        Aff dx = x2;
        dx.b -= s.mission.ground_station[0];
        Aff dz = z2;
        dz.b -= s.mission.ground_station[2];
        const std::vector<double> y = along_track_positions(s.mission);
        std::vector<double> cy(static_cast<size_t>(n_slots));
        for (int n = 0; n < n_slots; ++n) {
            const double dy = y[static_cast<size_t>(n)] - s.mission.ground_station[1];
            cy[static_cast<size_t>(n)] = dy * dy;
        }
        add_power_constraints(prog, l, dx, dz, cy, s, 1);
    }

    BuiltSubproblem out{std::move(prog), l, Eigen::VectorXd::Zero(l.dim)};
    if (l.has_x2) out.start[l.ix2] = f.slave.x;
    out.start[l.iz] = f.slave.z;
    const FootprintInterval fp2 = footprint(f.slave, s.radar);
    out.start[l.iu] = std::min(fp1.far_edge, fp2.far_edge) - kNudge;
    out.start[l.iw] = std::max(fp1.near_edge, fp2.near_edge) + kNudge;
    fill_power_start(out.start, l, link_distances(f.slave, s.mission), s, 1);
    return out;
}

BuiltSubproblem build_master_subproblem(const Formation& f, const std::vector<double>& p1,
                                        const std::vector<double>& p2, const ScenarioConfig& s,
                                        const BuildOptions& opt) {
    require_feasible_point(f, p1, p2, s);
    const int n_slots = s.mission.num_slots;
    const SubproblemLayout l = make_layout(false, n_slots, opt.constant_power);
    ConvexProgram prog(l.dim);

    const double xt = s.mission.target_x;
    const double theta1 = look_angle_master(s.radar.theta_d);
    const double tan1 = std::tan(theta1);
    const double sin1 = std::sin(theta1);
    const double sec1 = std::sqrt(tan1 * tan1 + 1.0);
    const double tf = std::tan(s.radar.theta_far());
    const double tn = std::tan(s.radar.theta_near());
    const double span = coord_span(s);
    const auto [r1_cur, r2] = slant_ranges(f, xt);

    Aff z1(l.dim);
    z1.a[l.iz] = 1.0;
    Aff x1(l.dim, xt);  // x1 = x_t - tan(theta_d) z1 by C2 substitution
    x1.a = -tan1 * z1.a;

    Eigen::VectorXd c = Eigen::VectorXd::Zero(l.dim);
    c[l.iu] = 1.0;
    c[l.iw] = -1.0;
    prog.set_objective(c);

    const FootprintInterval fp2 = footprint(f.slave, s.radar);
    prog.add_box(l.iu, -span, fp2.far_edge, "u_slave_edge");
    prog.add_box(l.iw, fp2.near_edge, span, "w_slave_edge");
    {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(l.dim);  // u - x_t - (tf - tan1) z1 <= 0
        a[l.iu] = 1.0;
        a[l.iz] = -(tf - tan1);
        prog.add_affine(a, xt, "u_master_edge");
        Eigen::VectorXd aw = Eigen::VectorXd::Zero(l.dim);  // x_t + (tn - tan1) z1 - w <= 0
        aw[l.iz] = tn - tan1;
        aw[l.iw] = -1.0;
        prog.add_affine(aw, -xt, "w_master_edge");
    }

    prog.add_box(l.iz, s.thresholds.z_min, s.thresholds.z_max, "C1");

    // C3: r1 = sec1 * z1 >= r2 (fixed) -> affine lower bound on z1.
    {
        Eigen::VectorXd a = -z1.a;
        prog.add_affine(a, -r2 / sec1, "C3");
    }

    // C~~5 per Lemma 1 with roles swapped: q1(z1) varies, q2 fixed.
    {
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(l.dim, l.dim);
        Eigen::VectorXd q = Eigen::VectorXd::Zero(l.dim);
        double r = s.thresholds.b_min * s.thresholds.b_min;
        Aff fx = x1;
        fx.b -= f.slave.x;
        Aff fz = z1;
        fz.b -= f.slave.z;
        add_square(fx, 1.0, Q, q, r);
        add_square(fz, 1.0, Q, q, r);
        const double ux = f.master.x - f.slave.x, uz = f.master.z - f.slave.z;
        add_linear(x1, -4.0 * ux, q, r);
        add_linear(z1, -4.0 * uz, q, r);
        r += 2.0 * ux * (f.master.x + f.slave.x) + 2.0 * uz * (f.master.z + f.slave.z);
        prog.add_quadratic(Q, q, r, "C5~~");
    }

    // C6 in expanded polynomial form, monotone convex in r1 = sec1 * z1:
    // sin1/c * r1^3 + w2/c * r1^2 + sin1*w2/c^2 * r1^5 <= 1/gamma^2 - 1.
    {
        const double w2 = xt - f.slave.x;
        double cmin = std::numeric_limits<double>::infinity();
        for (int n = 0; n < n_slots; ++n) cmin = std::min(cmin, radar_constant(s, n));
        std::vector<double> coef(5, 0.0);
        coef[1] = w2 / cmin;
        coef[2] = sin1 / cmin;
        coef[4] = sin1 * w2 / (cmin * cmin);
        const double g = s.thresholds.gamma_snr_min;
        prog.add_polynomial(coef, sec1 * z1.a, 0.0, 1.0 / (g * g) - 1.0, "C6");
    }

    // C~~8a/b: with b_perp fixed (Proposition 2), the window is affine in z1.
    {
        const double bperp = perpendicular_baseline(f.slave, xt, theta1);
        const double lam_t = s.radar.lambda * tan1;
        const double hi = s.thresholds.h_amb_max * bperp / lam_t;
        const double lo = s.thresholds.h_amb_min > 0.0
                              ? s.thresholds.h_amb_min * bperp / lam_t
                              : -std::numeric_limits<double>::infinity();
        prog.add_box(l.iz, lo, hi, "C8~~");
    }

    // C9-C11 on the master powers.
    {
        Aff dx = x1;
        dx.b -= s.mission.ground_station[0];
        Aff dz = z1;
        dz.b -= s.mission.ground_station[2];
        const std::vector<double> y = along_track_positions(s.mission);
        std::vector<double> cy(static_cast<size_t>(n_slots));
        for (int n = 0; n < n_slots; ++n) {
            const double dy = y[static_cast<size_t>(n)] - s.mission.ground_station[1];
            cy[static_cast<size_t>(n)] = dy * dy;
        }
        add_power_constraints(prog, l, dx, dz, cy, s, 0);
    }

    BuiltSubproblem out{std::move(prog), l, Eigen::VectorXd::Zero(l.dim)};
    out.start[l.iz] = f.master.z;
    const FootprintInterval fp1 = footprint(f.master, s.radar);
    out.start[l.iu] = std::min(fp1.far_edge, fp2.far_edge) - kNudge;
    out.start[l.iw] = std::max(fp1.near_edge, fp2.near_edge) + kNudge;
    fill_power_start(out.start, l, link_distances(f.master, s.mission), s, 0);
    return out;
}

ScaResult sca_solve(SubproblemTag tag, const Formation& start, const ScenarioConfig& s,
                    const SCAConfig& cfg, RunMode mode) {
    ScaResult res;
    Formation f = start;
    BuildOptions opt;
    if (mode == RunMode::Benchmark1) opt.pin_x2 = f.master.x;
    if (mode == RunMode::Benchmark2) opt.constant_power = true;

    std::vector<double> p1 = snapped_schedule(f.master, s, 0, mode);
    std::vector<double> p2 = snapped_schedule(f.slave, s, 1, mode);
    double obj = objective_tilde(f, s.radar);
    res.objective_trace.push_back(obj);

    for (int it = 0; it < cfg.max_iters; ++it) {
        const BuiltSubproblem bp = (tag == SubproblemTag::SlaveStep)
                                       ? build_slave_subproblem(f, p1, p2, s, opt)
                                       : build_master_subproblem(f, p1, p2, s, opt);
        const SolveReport rep = solve(bp.program, kSolveTol, &bp.start);
        if (rep.status == SolveReport::Status::Infeasible) break;

        Formation cand = f;
        if (tag == SubproblemTag::SlaveStep) {
            cand.slave.x = bp.layout.has_x2 ? rep.x[bp.layout.ix2] : *opt.pin_x2;
            cand.slave.z = rep.x[bp.layout.iz];
        } else {
            cand.master.z = rep.x[bp.layout.iz];
            cand.master.x = master_x_for(cand.master.z, s.mission.target_x, s.radar.theta_d);
        }

        // Pull back toward the previous iterate until the exact (original)
        // constraints accept the point; the objective is affine along the
        // segment, so any accepted point keeps the improvement direction.
        Formation acc = cand;
        bool ok = false;
        double tstep = 1.0;
        for (int k = 0; k < 25; ++k) {
            acc = lerp(f, cand, tstep, s);
            const std::vector<double> q1p = snapped_schedule(acc.master, s, 0, mode);
            const std::vector<double> q2p = snapped_schedule(acc.slave, s, 1, mode);
            if (original_point_feasible(acc, q1p, q2p, s)) {
                ok = true;
                break;
            }
            tstep *= 0.5;
        }
        if (!ok) break;

        const double nobj = objective_tilde(acc, s.radar);
        if (nobj < obj - 1e-7) break;  // subproblem noise; treat as fixed point
        f = acc;
        p1 = snapped_schedule(f.master, s, 0, mode);
        p2 = snapped_schedule(f.slave, s, 1, mode);
        const double rel = std::abs(nobj - obj) / std::max(std::abs(nobj), 1e-12);
        obj = nobj;
        res.objective_trace.push_back(obj);
        ++res.iterations;
        if (rel <= cfg.epsilon) break;
    }

    res.formation = f;
    res.powers = (tag == SubproblemTag::SlaveStep) ? p2 : p1;
    res.objective = obj;
    return res;
}

namespace {

// Coarse-grid feasibility repair: max-min-slack point over a deterministic
// lattice of (z1, x2, z2).
Formation repair_feasible_start(const ScenarioConfig& s, RunMode mode) {
    const auto& t = s.thresholds;
    const double xt = s.mission.target_x;
    const double span = coord_span(s);
    auto linspace = [](double lo, double hi, int k, int i) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1);
    };
    double best = -std::numeric_limits<double>::infinity();
    Formation best_f;
    for (int i = 0; i < 21; ++i) {
        Formation f;
        f.master.z = linspace(t.z_min, t.z_max, 21, i);
        f.master.x = master_x_for(f.master.z, xt, s.radar.theta_d);
        const int nx = (mode == RunMode::Benchmark1) ? 1 : 25;
        for (int j = 0; j < nx; ++j) {
            f.slave.x = (mode == RunMode::Benchmark1) ? f.master.x
                                                      : linspace(xt - span / 2.0, xt, 25, j);
            for (int k = 0; k < 21; ++k) {
                f.slave.z = linspace(t.z_min, t.z_max, 21, k);
                const std::vector<double> p1 = snapped_schedule(f.master, s, 0, mode);
                const std::vector<double> p2 = snapped_schedule(f.slave, s, 1, mode);
                const double slack = min_original_slack(f, p1, p2, s);
                if (slack > best) {
                    best = slack;
                    best_f = f;
                }
            }
        }
    }
    if (best < 0.0)
        throw InfeasibleScenarioError(
            "no feasible formation found on the repair grid (best slack " +
            std::to_string(best) + ")");
    return best_f;
}

}  // namespace

RunReport ao_solve(const ScenarioConfig& s, const Formation& init, const AOConfig& cfg,
                   RunMode mode) {
    RunReport rep;
    rep.mode = mode;
    rep.scenario_fingerprint = scenario_fingerprint(s);

    Formation f = init;
    f.master.x = master_x_for(f.master.z, s.mission.target_x, s.radar.theta_d);
    if (mode == RunMode::Benchmark1) f.slave.x = f.master.x;
    {
        const std::vector<double> p1 = snapped_schedule(f.master, s, 0, mode);
        const std::vector<double> p2 = snapped_schedule(f.slave, s, 1, mode);
        if (!original_point_feasible(f, p1, p2, s)) f = repair_feasible_start(s, mode);
    }

    double obj = objective_tilde(f, s.radar);
    {
        const std::vector<double> p1 = snapped_schedule(f.master, s, 0, mode);
        const std::vector<double> p2 = snapped_schedule(f.slave, s, 1, mode);
        rep.trace.push_back({0, "init", obj, 0, f, min_original_slack(f, p1, p2, s)});
    }

    rep.outer_iterations = cfg.max_outer;
    for (int outer = 1; outer <= cfg.max_outer; ++outer) {
        ScaResult sres = sca_solve(SubproblemTag::SlaveStep, f, s, cfg.inner, mode);
        f = sres.formation;
        {
            const std::vector<double> p1 = snapped_schedule(f.master, s, 0, mode);
            rep.trace.push_back({outer, "slave", sres.objective, sres.iterations, f,
                                 min_original_slack(f, p1, sres.powers, s)});
        }
        if (mode != RunMode::Benchmark1) {
            // Benchmark 1 pins x1 = x2 with x2 fixed, which freezes z1; the
            // master step would be a no-op, so it is skipped.
            ScaResult mres = sca_solve(SubproblemTag::MasterStep, f, s, cfg.inner, mode);
            f = mres.formation;
            const std::vector<double> p2 = snapped_schedule(f.slave, s, 1, mode);
            rep.trace.push_back({outer, "master", mres.objective, mres.iterations, f,
                                 min_original_slack(f, mres.powers, p2, s)});
        }
        const double nobj = objective_tilde(f, s.radar);
        const double rel = std::abs(nobj - obj) / std::max(std::abs(nobj), 1e-12);
        obj = nobj;
        if (rel <= cfg.epsilon) {
            rep.converged = true;
            rep.outer_iterations = outer;
            break;
        }
    }

    rep.formation = f;
    rep.p1 = snapped_schedule(f.master, s, 0, mode);
    rep.p2 = snapped_schedule(f.slave, s, 1, mode);
    rep.objective_tilde = obj;
    rep.coverage = coverage(f, s.mission, s.radar);
    rep.metrics = compute_metrics(f, s);
    rep.feasibility = evaluate_constraints(f, rep.p1, rep.p2, s);
    return rep;
}

}  // namespace insarfopt
