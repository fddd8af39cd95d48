// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "insarfopt.h"

namespace {
const std::string kTable1 = std::string(INSARFOPT_DATA_DIR) + "/table1.scenario";

struct StrGuard {
    char* p = nullptr;
    ~StrGuard() { insarfopt_string_free(p); }
};
}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(insarfopt_version()) == "1.0.0");
}

TEST_CASE("load, fingerprint, clone, override") {
    insarfopt_scenario* s = nullptr;
    StrGuard err;
    REQUIRE(insarfopt_scenario_load(kTable1.c_str(), &s, &err.p) == INSARFOPT_OK);
    REQUIRE(s != nullptr);

    StrGuard fp;
    REQUIRE(insarfopt_scenario_fingerprint(s, &fp.p) == INSARFOPT_OK);
    CHECK(std::string(fp.p).size() > 0);

    insarfopt_scenario* c = insarfopt_scenario_clone(s);
    REQUIRE(c != nullptr);
    StrGuard fpc;
    insarfopt_scenario_fingerprint(c, &fpc.p);
    CHECK(std::string(fpc.p) == std::string(fp.p));

    StrGuard oerr;
    REQUIRE(insarfopt_scenario_override(c, "h_amb_max", 2.2, &oerr.p) == INSARFOPT_OK);
    StrGuard fpo;
    insarfopt_scenario_fingerprint(c, &fpo.p);
    CHECK(std::string(fpo.p) != std::string(fp.p));

    StrGuard berr;
    CHECK(insarfopt_scenario_override(c, "bogus_field", 1.0, &berr.p) ==
          INSARFOPT_ERR_INVALID);
    CHECK(berr.p != nullptr);

    insarfopt_scenario_free(c);
    insarfopt_scenario_free(s);
}

TEST_CASE("error paths") {
    insarfopt_scenario* s = nullptr;
    StrGuard err;
    CHECK(insarfopt_scenario_load("/no/such/file.scenario", &s, &err.p) ==
          INSARFOPT_ERR_INVALID);
    CHECK(err.p != nullptr);
    StrGuard err2;
    CHECK(insarfopt_scenario_parse("not a scenario at all", &s, &err2.p) ==
          INSARFOPT_ERR_INVALID);
    CHECK(insarfopt_scenario_load(nullptr, &s, nullptr) == INSARFOPT_ERR_INVALID);
    CHECK(insarfopt_solve_json(nullptr, "proposed", 0, 0.0, nullptr, nullptr) ==
          INSARFOPT_ERR_INVALID);
}

TEST_CASE("solve, metrics and oracle through the C surface") {
    insarfopt_scenario* s = nullptr;
    StrGuard lerr;
    REQUIRE(insarfopt_scenario_load(kTable1.c_str(), &s, &lerr.p) == INSARFOPT_OK);

    SUBCASE("benchmark2 solve returns a parseable report") {
        StrGuard out, err;
        REQUIRE(insarfopt_solve_json(s, "benchmark2", 0, 0.0, &out.p, &err.p) ==
                INSARFOPT_OK);
        const auto j = nlohmann::json::parse(out.p);
        CHECK(j.at("mode") == "benchmark2");
        CHECK(j.at("converged").get<bool>());
        CHECK(j.at("coverage_m2").get<double>() > 0.0);
        CHECK(j.at("feasibility").at("feasible").get<bool>());
    }
    SUBCASE("unknown mode is an invalid-argument error") {
        StrGuard out, err;
        CHECK(insarfopt_solve_json(s, "warp_drive", 0, 0.0, &out.p, &err.p) ==
              INSARFOPT_ERR_INVALID);
        CHECK(err.p != nullptr);
    }
    SUBCASE("metrics for an explicit formation") {
        StrGuard out, err;
        REQUIRE(insarfopt_metrics_json(s, 100.0, -71.0, 100.0, &out.p, &err.p) ==
                INSARFOPT_OK);
        const auto j = nlohmann::json::parse(out.p);
        CHECK(j.at("feasibility").at("feasible").get<bool>());
        CHECK(j.at("metrics").at("b_perp_m").get<double>() > 2.0);
    }
    SUBCASE("coarse oracle") {
        StrGuard out, err;
        REQUIRE(insarfopt_oracle_json(s, 5.0, 2, &out.p, &err.p) == INSARFOPT_OK);
        const auto j = nlohmann::json::parse(out.p);
        CHECK(j.at("found").get<bool>());
        CHECK(j.at("feasible").get<std::int64_t>() > 0);
    }
    SUBCASE("oracle dump row count matches the feasible count") {
        StrGuard out, csv, err;
        REQUIRE(insarfopt_oracle_dump_json(s, 10.0, 2, &out.p, &csv.p, &err.p) ==
                INSARFOPT_OK);
        const auto j = nlohmann::json::parse(out.p);
        const std::string text(csv.p);
        std::int64_t lines = 0;
        for (char ch : text)
            if (ch == '\n') ++lines;
        CHECK(lines - 1 == j.at("feasible").get<std::int64_t>());  // minus header
        CHECK(text.rfind("z1,x2,z2,coverage_m2,min_slack\n", 0) == 0);
    }
    SUBCASE("infeasible scenario maps to the infeasible code") {
        insarfopt_scenario* c = insarfopt_scenario_clone(s);
        StrGuard oerr;
        REQUIRE(insarfopt_scenario_override(c, "b_min", 1000.0, &oerr.p) == INSARFOPT_OK);
        StrGuard out, err;
        CHECK(insarfopt_oracle_json(c, 10.0, 2, &out.p, &err.p) ==
              INSARFOPT_ERR_INFEASIBLE);
        const auto j = nlohmann::json::parse(out.p);  // stats still written
        CHECK_FALSE(j.at("found").get<bool>());
        insarfopt_scenario_free(c);
    }

    insarfopt_scenario_free(s);
}
