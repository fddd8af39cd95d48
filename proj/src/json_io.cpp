// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/json_io.hpp"

#include <algorithm>
#include <cmath>

#include "insarfopt/comms.hpp"

namespace insarfopt {

namespace {
double finite(double v) { return std::clamp(v, -1e300, 1e300); }

nlohmann::json finite_array(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(finite(x));
    return a;
}
}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& m) {
    nlohmann::json j;
    j["gamma_rg"] = finite(m.gamma_rg);
    j["h_amb_m"] = finite(m.h_amb);
    j["b_perp_m"] = finite(m.b_perp);
    j["baseline_m"] = finite(m.baseline);
    j["gamma_snr_worst"] =
        finite(*std::min_element(m.gamma_snr.begin(), m.gamma_snr.end()));
    j["snr1_worst"] = finite(*std::min_element(m.snr1.begin(), m.snr1.end()));
    j["snr2_worst"] = finite(*std::min_element(m.snr2.begin(), m.snr2.end()));
    return j;
}

nlohmann::json feasibility_to_json(const FeasibilityReport& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : r.constraints) {
        nlohmann::json j;
        j["name"] = c.name;
        j["satisfied"] = c.satisfied;
        j["slack"] = finite(c.slack);
        j["description"] = c.description;
        arr.push_back(std::move(j));
    }
    return {{"constraints", std::move(arr)}, {"feasible", r.feasible()}};
}

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::Proposed: return "proposed";
        case RunMode::Benchmark1: return "benchmark1";
        case RunMode::Benchmark2: return "benchmark2";
    }
    return "proposed";
}

RunMode run_mode_from_name(const std::string& name) {
    if (name == "proposed") return RunMode::Proposed;
    if (name == "benchmark1") return RunMode::Benchmark1;
    if (name == "benchmark2") return RunMode::Benchmark2;
    throw ScenarioError("unknown run mode: " + name);
}

nlohmann::json run_report_to_json(const RunReport& r, const ScenarioConfig& s) {
    nlohmann::json j;
    j["mode"] = run_mode_name(r.mode);
    j["converged"] = r.converged;
    j["outer_iterations"] = r.outer_iterations;
    j["scenario_fingerprint"] = r.scenario_fingerprint;
    j["formation"] = {{"x1", finite(r.formation.master.x)},
                      {"z1", finite(r.formation.master.z)},
                      {"x2", finite(r.formation.slave.x)},
                      {"z2", finite(r.formation.slave.z)}};
    j["objective_tilde_m"] = finite(r.objective_tilde);
    j["coverage_m2"] = finite(r.coverage);
    j["metrics"] = metrics_to_json(r.metrics);
    j["feasibility"] = feasibility_to_json(r.feasibility);

    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"outer", t.outer},
                         {"subproblem", t.subproblem},
                         {"objective", finite(t.objective)},
                         {"inner_iterations", t.inner_iterations},
                         {"x1", finite(t.formation.master.x)},
                         {"z1", finite(t.formation.master.z)},
                         {"x2", finite(t.formation.slave.x)},
                         {"z2", finite(t.formation.slave.z)},
                         {"min_slack", finite(t.min_slack)}});
    }
    j["trace"] = std::move(trace);

    const std::vector<double> d1 = link_distances(r.formation.master, s.mission);
    const std::vector<double> d2 = link_distances(r.formation.slave, s.mission);
    std::vector<double> rate1(r.p1.size()), rate2(r.p2.size());
    for (size_t n = 0; n < r.p1.size(); ++n) {
        rate1[n] = throughput(r.p1[n], d1[n], s.comm.bandwidth[0], s.comm.gamma);
        rate2[n] = throughput(r.p2[n], d2[n], s.comm.bandwidth[1], s.comm.gamma);
    }
    j["schedules"] = {{"p1_watts", finite_array(r.p1)},
                      {"p2_watts", finite_array(r.p2)},
                      {"rate1_bps", finite_array(rate1)},
                      {"rate2_bps", finite_array(rate2)}};
    const double dt = s.mission.slot_duration;
    double e1 = 0.0, e2 = 0.0;
    for (double p : r.p1) e1 += p * dt;
    for (double p : r.p2) e2 += p * dt;
    j["energy_j"] = {{"uav1", finite(e1)}, {"uav2", finite(e2)}};
    return j;
}

nlohmann::json oracle_to_json(const OracleResult& r) {
    nlohmann::json j;
    j["found"] = r.found;
    j["evaluated"] = r.evaluated;
    j["feasible"] = r.feasible;
    if (r.found) {
        j["best"] = {{"x1", finite(r.best.master.x)},
                     {"z1", finite(r.best.master.z)},
                     {"x2", finite(r.best.slave.x)},
                     {"z2", finite(r.best.slave.z)}};
        j["coverage_m2"] = finite(r.coverage);
        j["objective_tilde_m"] = finite(r.objective_tilde);
    }
    return j;
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace insarfopt
