// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = INSARFOPT_CLI_PATH;
const std::string kTable1 = std::string(INSARFOPT_DATA_DIR) + "/table1.scenario";

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("insarfopt_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("solve writes the three artifacts and exits 0") {
    const fs::path out = fresh_dir("solve");
    REQUIRE(run("solve " + kTable1 + " --mode benchmark2 --out " + out.string()) == 0);
    REQUIRE(fs::exists(out / "run_report.json"));
    REQUIRE(fs::exists(out / "trace.csv"));
    REQUIRE(fs::exists(out / "schedules.csv"));

    const auto j = nlohmann::json::parse(slurp(out / "run_report.json"));
    CHECK(j.contains("metadata"));
    CHECK(j.at("report").at("coverage_m2").get<double>() > 0.0);
    CHECK(j.at("report").at("mode") == "benchmark2");

    CHECK(slurp(out / "trace.csv").rfind("iteration,objective,subproblem\n", 0) == 0);
    CHECK(slurp(out / "schedules.csv").rfind("slot,p1_watts,p2_watts,rate1,rate2\n", 0) ==
          0);
}

TEST_CASE("missing scenario file exits 1 without artifacts") {
    const fs::path out = fresh_dir("missing");
    CHECK(run("solve /no/such/file.scenario --out " + out.string()) == 1);
    CHECK_FALSE(fs::exists(out / "run_report.json"));
}

TEST_CASE("usage errors exit 1, help exits 0") {
    CHECK(run("solve") == 1);               // missing positional
    CHECK(run("frobnicate") == 1);          // unknown subcommand
    CHECK(run("--help") == 0);
}

TEST_CASE("benchmark1 reports a vertical formation") {
    const fs::path out = fresh_dir("bench1");
    REQUIRE(run("solve " + kTable1 + " --mode benchmark1 --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out / "run_report.json"));
    const auto& f = j.at("report").at("formation");
    CHECK(std::abs(f.at("x1").get<double>() - f.at("x2").get<double>()) <= 1e-6);
}

TEST_CASE("infeasible scenario exits 2") {
    const fs::path out = fresh_dir("infeasible");
    std::string text = slurp(kTable1);
    const auto pos = text.find("b_min = 2 m");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "b_min = 1000 m");
    const fs::path bad = out / "bad.scenario";
    std::ofstream(bad) << text;
    CHECK(run("solve " + bad.string() + " --out " + out.string()) == 2);
}

TEST_CASE("sweep emits one ordered row per value-mode pair") {
    const fs::path out = fresh_dir("sweep");
    REQUIRE(run("sweep " + kTable1 +
                " --param p_com_max --values 0.005 0.01 0.02 --modes benchmark2 --out " +
                out.string()) == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.rfind("value,mode,coverage_m2,b_perp_m,h_amb_m,converged\n", 0) == 0);
    CHECK(count_lines(csv) == 4);  // header + 3 rows

    // coverage is non-decreasing in p_com_max (relaxing C9)
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    double prev = -1.0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string value, mode, cov;
        std::getline(row, value, ',');
        std::getline(row, mode, ',');
        std::getline(row, cov, ',');
        const double c = std::stod(cov);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("oracle artifacts and dump consistency") {
    const fs::path out = fresh_dir("oracle");
    REQUIRE(run("oracle " + kTable1 + " --step 5 --jobs 2 --dump-feasible --out " +
                out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out / "oracle.json"));
    CHECK(j.at("found").get<bool>());
    const auto feasible = j.at("feasible").get<std::int64_t>();
    CHECK(feasible > 0);
    const std::string csv = slurp(out / "oracle_feasible.csv");
    CHECK(count_lines(csv) - 1 == feasible);
}

TEST_CASE("report compares runs and guards against scenario mismatches") {
    const fs::path a = fresh_dir("rep_a");
    const fs::path b = fresh_dir("rep_b");
    REQUIRE(run("solve " + kTable1 + " --mode benchmark2 --out " + a.string()) == 0);
    REQUIRE(run("solve " + kTable1 + " --mode benchmark2 --init 1 --out " +
                b.string()) == 0);

    const fs::path out = fresh_dir("report");
    CHECK(run("report " + (a / "run_report.json").string() + " " +
              (b / "run_report.json").string() + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "report_summary.csv"));

    // single report: degenerate but valid
    CHECK(run("report " + (a / "run_report.json").string() + " --out " +
              out.string()) == 0);

    // mismatched scenario fingerprints are rejected
    const fs::path m = fresh_dir("rep_m");
    std::string text = slurp(kTable1);
    const auto pos = text.find("e_com = 700 J");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 13, "e_com = 600 J");
    const fs::path other = m / "other.scenario";
    std::ofstream(other) << text;
    REQUIRE(run("solve " + other.string() + " --mode benchmark2 --out " + m.string()) == 0);
    CHECK(run("report " + (a / "run_report.json").string() + " " +
              (m / "run_report.json").string() + " --out " + out.string()) == 1);
}

TEST_CASE("repeated solves produce a byte-identical report object") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    REQUIRE(run("solve " + kTable1 + " --mode benchmark2 --out " + a.string()) == 0);
    REQUIRE(run("solve " + kTable1 + " --mode benchmark2 --out " + b.string()) == 0);
    const auto ja = nlohmann::json::parse(slurp(a / "run_report.json"));
    const auto jb = nlohmann::json::parse(slurp(b / "run_report.json"));
    CHECK(ja.at("report").dump() == jb.at("report").dump());  // timestamps excluded
}
