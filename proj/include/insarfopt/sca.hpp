// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "insarfopt/convex.hpp"
#include "insarfopt/metrics.hpp"

namespace insarfopt {

enum class RunMode { Proposed, Benchmark1, Benchmark2 };
enum class SubproblemTag { SlaveStep, MasterStep };

struct SCAConfig {
    double epsilon = 1e-4;  // relative-improvement stop
    int max_iters = 50;
};

struct AOConfig {
    double epsilon = 1e-4;
    int max_outer = 30;
    SCAConfig inner;
};

struct BuildOptions {
    // Benchmark 1 (vertical formation): x2 is eliminated and fixed here.
    std::optional<double> pin_x2;
    // Benchmark 2 (constant power): one shared power variable per UAV.
    bool constant_power = false;
};

// Variable layout of a built subproblem. Slave step: [x2, z2, p~.., u, w]
// (x2 absent when pinned); master step: [z1, p~.., u, w]. Power variables
// are scaled by p_com_max; u/w are the epigraph variables for the far/near
// footprint edges.
struct SubproblemLayout {
    bool has_x2 = false;
    int ix2 = -1;
    int iz = 0;      // z2 (slave) or z1 (master)
    int ip = 0;      // first power variable
    int np = 0;      // number of power variables (N, or 1 for constant power)
    int iu = 0, iw = 0;
    int dim = 0;
};

struct BuiltSubproblem {
    ConvexProgram program;
    SubproblemLayout layout;
    Eigen::VectorXd start;  // warm start at the expansion point; feasible, but a
                            // constraint active there stays tight (phase-I
                            // strictifies before the barrier solve)
};

struct ScaResult {
    Formation formation;
    std::vector<double> powers;  // optimized side's schedule, snapped minimal
    double objective = 0.0;      // exact objective_tilde at the final point
    int iterations = 0;
    std::vector<double> objective_trace;  // exact objective per accepted step
};

struct TraceEntry {
    int outer = 0;
    std::string subproblem;  // "slave" | "master"
    double objective = 0.0;
    int inner_iterations = 0;
    Formation formation;
    double min_slack = 0.0;  // worst original-constraint slack at this iterate
};

struct RunReport {
    RunMode mode = RunMode::Proposed;
    bool converged = false;
    int outer_iterations = 0;
    Formation formation;
    std::vector<double> p1, p2;  // [W] per slot
    double objective_tilde = 0.0;
    double coverage = 0.0;       // [m^2]
    MetricsReport metrics;
    FeasibilityReport feasibility;
    std::vector<TraceEntry> trace;
    std::string scenario_fingerprint;
};

// min(far edges) - max(near edges), without the clamp at zero; equals the
// swath whenever positive.
double objective_tilde(const Formation& f, const RadarParams& r);

// Convex quadratic upper bound of -b^2(q_fix, q_var), expanded at a:
// g = b^2(q_fix, q_var) - 2 (a - q_fix)^T (2 q_var - a - q_fix).
// g >= -b^2 everywhere, with equal value and gradient at q_var = a.
double surrogate_baseline(const Vec2& q_var, const Vec2& q_fix, const Vec2& a);

// Subproblem builders. `f`/`p1`/`p2` give the current (expansion) point;
// both throw std::invalid_argument if it violates any original constraint
// beyond 1e-6.
BuiltSubproblem build_slave_subproblem(const Formation& f, const std::vector<double>& p1,
                                       const std::vector<double>& p2, const ScenarioConfig& s,
                                       const BuildOptions& opt = {});
BuiltSubproblem build_master_subproblem(const Formation& f, const std::vector<double>& p1,
                                        const std::vector<double>& p2, const ScenarioConfig& s,
                                        const BuildOptions& opt = {});

// One inner SCA loop over the chosen subproblem; the other side stays fixed.
ScaResult sca_solve(SubproblemTag tag, const Formation& start, const ScenarioConfig& s,
                    const SCAConfig& cfg = {}, RunMode mode = RunMode::Proposed);

// Alternating optimization (slave step, then master step, until the relative
// objective change drops below epsilon). When `init` is infeasible a coarse
// grid repair finds a feasible start; throws InfeasibleScenarioError when
// even the repair grid has no feasible point.
RunReport ao_solve(const ScenarioConfig& s, const Formation& init, const AOConfig& cfg = {},
                   RunMode mode = RunMode::Proposed);

// The documented starting formations (index 0..2); index 0 is the default.
Formation default_initialization(const ScenarioConfig& s, int index = 0);

// Minimal-energy power schedules for a formation (constant over slots in
// Benchmark2 mode); used both as the post-solve snap and by benchmarks.
std::vector<double> snapped_schedule(const Vec2& q, const ScenarioConfig& s, int uav,
                                     RunMode mode);

// True when every original constraint holds to within `tol`.
bool original_point_feasible(const Formation& f, const std::vector<double>& p1,
                             const std::vector<double>& p2, const ScenarioConfig& s,
                             double tol = 1e-6);

}  // namespace insarfopt
