// SPDX-License-Identifier: Apache-2.0
//
// insarfopt: formation + communication power optimization for a two-UAV
// bistatic InSAR mission. Talks to the core library through its C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "insarfopt.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CStr {
    char* p = nullptr;
    ~CStr() { insarfopt_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Scenario {
    insarfopt_scenario* p = nullptr;
    ~Scenario() { insarfopt_scenario_free(p); }
};

int default_jobs() {
    if (const char* env = std::getenv("INSARFOPT_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    return static_cast<bool>(f);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int fail(const std::string& msg, int code) {
    std::cerr << "insarfopt: " << msg << "\n";
    return code;
}

int load_scenario_checked(const std::string& path, Scenario& sc) {
    CStr err;
    const int rc = insarfopt_scenario_load(path.c_str(), &sc.p, &err.p);
    if (rc != INSARFOPT_OK) return fail("cannot load scenario: " + err.str(), 1);
    return 0;
}

std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- solve ----

int cmd_solve(const std::string& scenario_path, const std::string& mode, int init_index,
              double epsilon, const std::string& out_dir) {
    Scenario sc;
    if (int rc = load_scenario_checked(scenario_path, sc)) return rc;

    CStr out, err;
    const int rc =
        insarfopt_solve_json(sc.p, mode.c_str(), init_index, epsilon, &out.p, &err.p);
    if (rc == INSARFOPT_ERR_INFEASIBLE) return fail("infeasible scenario: " + err.str(), 2);
    if (rc != INSARFOPT_OK) return fail(err.str(), 1);

    json report = json::parse(out.str());
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    json file_json;
    file_json["metadata"] = {{"generated_at", timestamp_utc()},
                             {"tool_version", insarfopt_version()}};
    file_json["report"] = report;
    if (!write_file(fs::path(out_dir) / "run_report.json", file_json.dump(2) + "\n"))
        return fail("cannot write run_report.json", 1);

    std::string trace = "iteration,objective,subproblem\n";
    int it = 0;
    for (const auto& t : report["trace"])
        trace += std::to_string(it++) + "," + csv_num(t["objective"].get<double>()) + "," +
                 t["subproblem"].get<std::string>() + "\n";
    if (!write_file(fs::path(out_dir) / "trace.csv", trace)) return fail("cannot write trace.csv", 1);

    std::string sched = "slot,p1_watts,p2_watts,rate1,rate2\n";
    const auto& s = report["schedules"];
    for (size_t n = 0; n < s["p1_watts"].size(); ++n)
        sched += std::to_string(n) + "," + csv_num(s["p1_watts"][n].get<double>()) + "," +
                 csv_num(s["p2_watts"][n].get<double>()) + "," +
                 csv_num(s["rate1_bps"][n].get<double>()) + "," +
                 csv_num(s["rate2_bps"][n].get<double>()) + "\n";
    if (!write_file(fs::path(out_dir) / "schedules.csv", sched))
        return fail("cannot write schedules.csv", 1);

    std::cout << "mode=" << mode << " coverage_m2=" << report["coverage_m2"].get<double>()
              << " converged=" << (report["converged"].get<bool>() ? "true" : "false")
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- sweep ----

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::vector<double>& values, const std::vector<std::string>& modes,
              int jobs, const std::string& out_dir) {
    Scenario base;
    if (int rc = load_scenario_checked(scenario_path, base)) return rc;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::string csv = "value,mode,coverage_m2,b_perp_m,h_amb_m,converged\n";

    for (double value : values) {
        for (const std::string& mode : modes) {
            Scenario sc;
            sc.p = insarfopt_scenario_clone(base.p);
            CStr err;
            if (insarfopt_scenario_override(sc.p, param.c_str(), value, &err.p) !=
                INSARFOPT_OK)
                return fail("override failed: " + err.str(), 1);

            std::string cov = "nan", bperp = "nan", hamb = "nan";
            bool converged = false;
            if (mode == "oracle") {
                CStr out, oerr;
                const int rc = insarfopt_oracle_json(sc.p, 0.0, jobs, &out.p, &oerr.p);
                if (rc == INSARFOPT_OK) {
                    const json j = json::parse(out.str());
                    cov = csv_num(j["coverage_m2"].get<double>());
                    CStr mjson;
                    if (insarfopt_metrics_json(sc.p, j["best"]["z1"].get<double>(),
                                               j["best"]["x2"].get<double>(),
                                               j["best"]["z2"].get<double>(), &mjson.p,
                                               nullptr) == INSARFOPT_OK) {
                        const json m = json::parse(mjson.str());
                        bperp = csv_num(m["metrics"]["b_perp_m"].get<double>());
                        hamb = csv_num(m["metrics"]["h_amb_m"].get<double>());
                    }
                    converged = true;
                }
            } else {
                CStr out, serr;
                const int rc = insarfopt_solve_json(sc.p, mode.c_str(), 0, 0.0, &out.p,
                                                    &serr.p);
                if (rc == INSARFOPT_OK) {
                    const json j = json::parse(out.str());
                    cov = csv_num(j["coverage_m2"].get<double>());
                    bperp = csv_num(j["metrics"]["b_perp_m"].get<double>());
                    hamb = csv_num(j["metrics"]["h_amb_m"].get<double>());
                    converged = j["converged"].get<bool>();
                } else if (rc == INSARFOPT_ERR_INVALID) {
                    return fail("sweep setup error: " + serr.str(), 1);
                }
                // infeasible rows stay nan/false but do not abort the sweep
            }
            csv += csv_num(value) + "," + mode + "," + cov + "," + bperp + "," + hamb +
                   "," + (converged ? "true" : "false") + "\n";
        }
    }
    if (!write_file(fs::path(out_dir) / "sweep.csv", csv)) return fail("cannot write sweep.csv", 1);
    std::cout << "sweep rows=" << values.size() * modes.size() << "\n";
    return 0;
}

// --------------------------------------------------------------- oracle ----

int cmd_oracle(const std::string& scenario_path, double step, int jobs, bool dump_feasible,
               const std::string& out_dir) {
    Scenario sc;
    if (int rc = load_scenario_checked(scenario_path, sc)) return rc;

    std::error_code ec;
    fs::create_directories(out_dir, ec);

    CStr out, csv, err;
    int rc;
    if (dump_feasible)
        rc = insarfopt_oracle_dump_json(sc.p, step, jobs, &out.p, &csv.p, &err.p);
    else
        rc = insarfopt_oracle_json(sc.p, step, jobs, &out.p, &err.p);
    if (rc == INSARFOPT_ERR_INVALID) return fail(err.str(), 1);

    if (out.p && !write_file(fs::path(out_dir) / "oracle.json", out.str()))
        return fail("cannot write oracle.json", 1);
    if (dump_feasible && csv.p &&
        !write_file(fs::path(out_dir) / "oracle_feasible.csv", csv.str()))
        return fail("cannot write oracle_feasible.csv", 1);

    if (rc == INSARFOPT_ERR_INFEASIBLE) return fail("no feasible grid point", 2);
    std::cout << "oracle done\n";
    return 0;
}

// --------------------------------------------------------------- report ----

int cmd_report(const std::vector<std::string>& paths, const std::string& out_dir) {
    std::vector<json> reports;
    std::string fingerprint;
    for (const auto& p : paths) {
        std::ifstream f(p);
        if (!f) return fail("cannot read " + p, 1);
        json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            return fail(p + ": " + e.what(), 1);
        }
        if (!j.contains("report")) return fail(p + ": not a run report", 1);
        const json& r = j["report"];
        const std::string fp = r.value("scenario_fingerprint", "");
        if (fingerprint.empty())
            fingerprint = fp;
        else if (fp != fingerprint)
            return fail(p + ": scenario fingerprint mismatch", 1);
        reports.push_back(r);
    }

    std::string csv =
        "mode,coverage_m2,b_perp_m,h_amb_m,energy_uav1_j,energy_uav2_j,feasible\n";
    std::cout << "mode        coverage_m2   b_perp_m   h_amb_m   feasible\n";
    for (const auto& r : reports) {
        const std::string mode = r["mode"].get<std::string>();
        const double cov = r["coverage_m2"].get<double>();
        const double bp = r["metrics"]["b_perp_m"].get<double>();
        const double ha = r["metrics"]["h_amb_m"].get<double>();
        const bool feas = r["feasibility"]["feasible"].get<bool>();
        csv += mode + "," + csv_num(cov) + "," + csv_num(bp) + "," + csv_num(ha) + "," +
               csv_num(r["energy_j"]["uav1"].get<double>()) + "," +
               csv_num(r["energy_j"]["uav2"].get<double>()) + "," +
               (feas ? "true" : "false") + "\n";
        std::printf("%-11s %12.3f %10.3f %9.3f   %s\n", mode.c_str(), cov, bp, ha,
                    feas ? "yes" : "no");
    }
    if (reports.size() > 1) {
        std::cout << "coverage deltas:\n";
        for (size_t i = 0; i < reports.size(); ++i)
            for (size_t j = i + 1; j < reports.size(); ++j) {
                const double d = reports[i]["coverage_m2"].get<double>() -
                                 reports[j]["coverage_m2"].get<double>();
                std::printf("  %s - %s = %.3f m^2\n",
                            reports[i]["mode"].get<std::string>().c_str(),
                            reports[j]["mode"].get<std::string>().c_str(), d);
            }
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!write_file(fs::path(out_dir) / "report_summary.csv", csv))
        return fail("cannot write report_summary.csv", 1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-UAV bistatic InSAR formation and communication power optimizer"};
    app.require_subcommand(1);
    int jobs = default_jobs();

    std::string scenario, out_dir = ".";
    std::string mode = "proposed";
    int init_index = 0;
    double epsilon = 0.0;

    auto* solve = app.add_subcommand("solve", "Run the optimizer on a scenario");
    solve->add_option("scenario", scenario, "Scenario file")->required();
    solve->add_option("--mode", mode, "proposed|benchmark1|benchmark2")
        ->check(CLI::IsMember({"proposed", "benchmark1", "benchmark2"}));
    solve->add_option("--init", init_index, "Initialization index 0..2")
        ->check(CLI::Range(0, 2));
    solve->add_option("--epsilon", epsilon, "AO stop tolerance (default 1e-4)");
    solve->add_option("--out", out_dir, "Output directory");

    std::string param;
    std::vector<double> values;
    std::vector<std::string> modes{"proposed"};
    auto* sweep = app.add_subcommand("sweep", "Sweep a scenario parameter");
    sweep->add_option("scenario", scenario, "Scenario file")->required();
    sweep->add_option("--param", param, "Parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"p_com_max", "h_amb_max", "gamma_snr_min", "gamma_rg_min"}));
    sweep->add_option("--values", values, "Values (SI-linear units)")->required();
    sweep->add_option("--modes", modes, "Run modes per value")
        ->check(CLI::IsMember({"proposed", "benchmark1", "benchmark2", "oracle"}));
    sweep->add_option("--jobs", jobs, "Worker threads");
    sweep->add_option("--out", out_dir, "Output directory");

    double step = 0.0;
    bool dump_feasible = false;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive grid search");
    oracle->add_option("scenario", scenario, "Scenario file")->required();
    oracle->add_option("--step", step, "Grid step in meters (default 1)");
    oracle->add_flag("--dump-feasible", dump_feasible, "Also write the full feasible set CSV");
    oracle->add_option("--jobs", jobs, "Worker threads");
    oracle->add_option("--out", out_dir, "Output directory");

    std::vector<std::string> report_paths;
    auto* report = app.add_subcommand("report", "Tabulate and compare run reports");
    report->add_option("reports", report_paths, "run_report.json files")->required();
    report->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage errors map to exit 1
    }

    if (solve->parsed()) return cmd_solve(scenario, mode, init_index, epsilon, out_dir);
    if (sweep->parsed()) return cmd_sweep(scenario, param, values, modes, jobs, out_dir);
    if (oracle->parsed()) return cmd_oracle(scenario, step, jobs, dump_feasible, out_dir);
    if (report->parsed()) return cmd_report(report_paths, out_dir);
    return 1;
}
