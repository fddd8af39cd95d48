// SPDX-License-Identifier: Apache-2.0
#include "insarfopt.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>
#include <new>
#include <string>

#include "insarfopt/comms.hpp"
#include "insarfopt/json_io.hpp"
#include "insarfopt/oracle.hpp"
#include "insarfopt/sca.hpp"

struct insarfopt_scenario {
    insarfopt::ScenarioConfig cfg;
};

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void set_err(char** err, const std::string& msg) {
    if (err) *err = dup_string(msg);
}

template <typename Fn>
int guarded(char** err, Fn&& fn) {
    try {
        return fn();
    } catch (const insarfopt::InfeasibleScenarioError& e) {
        set_err(err, e.what());
        return INSARFOPT_ERR_INFEASIBLE;
    } catch (const std::exception& e) {
        set_err(err, e.what());
        return INSARFOPT_ERR_INVALID;
    }
}

}  // namespace

extern "C" {

int insarfopt_scenario_load(const char* path, insarfopt_scenario** out, char** err) {
    if (!path || !out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        auto* s = new insarfopt_scenario{insarfopt::load_scenario(path)};
        *out = s;
        return INSARFOPT_OK;
    });
}

int insarfopt_scenario_parse(const char* text, insarfopt_scenario** out, char** err) {
    if (!text || !out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        auto* s = new insarfopt_scenario{insarfopt::parse_scenario(text)};
        *out = s;
        return INSARFOPT_OK;
    });
}

insarfopt_scenario* insarfopt_scenario_clone(const insarfopt_scenario* s) {
    return s ? new (std::nothrow) insarfopt_scenario{s->cfg} : nullptr;
}

void insarfopt_scenario_free(insarfopt_scenario* s) { delete s; }

int insarfopt_scenario_override(insarfopt_scenario* s, const char* field, double value,
                                char** err) {
    if (!s || !field) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        insarfopt::override_field(s->cfg, field, value);
        return INSARFOPT_OK;
    });
}

int insarfopt_scenario_fingerprint(const insarfopt_scenario* s, char** out) {
    if (!s || !out) return INSARFOPT_ERR_INVALID;
    *out = dup_string(insarfopt::scenario_fingerprint(s->cfg));
    return INSARFOPT_OK;
}

int insarfopt_solve_json(const insarfopt_scenario* s, const char* mode, int init_index,
                         double epsilon, char** json_out, char** err) {
    if (!s || !mode || !json_out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        const insarfopt::RunMode m = insarfopt::run_mode_from_name(mode);
        insarfopt::AOConfig cfg;
        if (epsilon > 0.0) cfg.epsilon = epsilon;
        const insarfopt::Formation init =
            insarfopt::default_initialization(s->cfg, init_index);
        const insarfopt::RunReport rep = insarfopt::ao_solve(s->cfg, init, cfg, m);
        *json_out =
            dup_string(insarfopt::dump_canonical(run_report_to_json(rep, s->cfg)));
        return INSARFOPT_OK;
    });
}

int insarfopt_oracle_json(const insarfopt_scenario* s, double step, int jobs,
                          char** json_out, char** err) {
    if (!s || !json_out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        insarfopt::GridSpec g = insarfopt::GridSpec::defaults(s->cfg);
        if (step > 0.0) g.z1.step = g.z2.step = g.x2.step = step;
        const insarfopt::OracleResult res =
            insarfopt::grid_search(s->cfg, g, jobs > 0 ? jobs : 1);
        *json_out = dup_string(insarfopt::dump_canonical(oracle_to_json(res)));
        return res.found ? INSARFOPT_OK : INSARFOPT_ERR_INFEASIBLE;
    });
}

int insarfopt_oracle_dump_json(const insarfopt_scenario* s, double step, int jobs,
                               char** json_out, char** csv_out, char** err) {
    if (!s || !json_out || !csv_out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        insarfopt::GridSpec g = insarfopt::GridSpec::defaults(s->cfg);
        if (step > 0.0) g.z1.step = g.z2.step = g.x2.step = step;
        std::vector<insarfopt::FeasibleRow> rows;
        const insarfopt::OracleResult res =
            insarfopt::grid_search(s->cfg, g, jobs > 0 ? jobs : 1, &rows);
        *json_out = dup_string(insarfopt::dump_canonical(oracle_to_json(res)));
        std::string csv = "z1,x2,z2,coverage_m2,min_slack\n";
        char line[160];
        for (const auto& r : rows) {
            std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g,%.10g\n",
                          r.f.master.z, r.f.slave.x, r.f.slave.z, r.coverage,
                          r.min_slack);
            csv += line;
        }
        *csv_out = dup_string(csv);
        return res.found ? INSARFOPT_OK : INSARFOPT_ERR_INFEASIBLE;
    });
}

int insarfopt_metrics_json(const insarfopt_scenario* s, double z1, double x2, double z2,
                           char** json_out, char** err) {
    if (!s || !json_out) {
        set_err(err, "null argument");
        return INSARFOPT_ERR_INVALID;
    }
    return guarded(err, [&] {
        insarfopt::Formation f;
        f.master.z = z1;
        f.master.x = insarfopt::master_x_for(z1, s->cfg.mission.target_x,
                                             s->cfg.radar.theta_d);
        f.slave = {x2, z2};
        const auto p1 = insarfopt::min_energy_schedule(
            insarfopt::link_distances(f.master, s->cfg.mission), s->cfg, 0);
        const auto p2 = insarfopt::min_energy_schedule(
            insarfopt::link_distances(f.slave, s->cfg.mission), s->cfg, 1);
        nlohmann::json j;
        j["metrics"] = metrics_to_json(insarfopt::compute_metrics(f, s->cfg));
        j["feasibility"] =
            feasibility_to_json(insarfopt::evaluate_constraints(f, p1, p2, s->cfg));
        *json_out = dup_string(insarfopt::dump_canonical(j));
        return INSARFOPT_OK;
    });
}

const char* insarfopt_version(void) { return "1.0.0"; }

void insarfopt_string_free(char* p) { std::free(p); }

}  // extern "C"
