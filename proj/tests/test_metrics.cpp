// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "insarfopt/comms.hpp"
#include "insarfopt/metrics.hpp"

using namespace insarfopt;

namespace {
const std::string kTable1 = std::string(INSARFOPT_DATA_DIR) + "/table1.scenario";

Formation master_at(double z1, const ScenarioConfig& s, Vec2 slave) {
    Formation f;
    f.master = {master_x_for(z1, s.mission.target_x, s.radar.theta_d), z1};
    f.slave = slave;
    return f;
}
}  // namespace

TEST_CASE("master SNR: longhand value and cubic law") {
    const ScenarioConfig s = load_scenario(kTable1);
    const Formation f = master_at(100.0, s, {10.0, 4.0});
    const double r1 = 100.0 * std::sqrt(2.0);
    const double expect = radar_constant(s, 0) / (r1 * r1 * r1 / std::sqrt(2.0));
    CHECK(snr_master(f, s, 0) == doctest::Approx(expect).epsilon(1e-12));

    // doubling r1 (z1 50 -> 100 at fixed theta1) divides SNR1 by 8
    const Formation g = master_at(50.0, s, f.slave);
    CHECK(snr_master(g, s, 0) == doctest::Approx(8.0 * snr_master(f, s, 0)).epsilon(1e-12));

    // doubling v_y halves c_n, hence SNR1
    ScenarioConfig fast = s;
    for (double& v : fast.mission.v_y) v *= 2.0;
    CHECK(snr_master(f, fast, 0) == doctest::Approx(0.5 * snr_master(f, s, 0)));
}

TEST_CASE("slave SNR: longhand, linearity, nadir sentinel") {
    const ScenarioConfig s = load_scenario(kTable1);
    const Formation f = master_at(100.0, s, {10.0, 4.0});
    const double r1sq = 2e4;
    CHECK(snr_slave(f, s, 0) ==
          doctest::Approx(radar_constant(s, 0) / (r1sq * 10.0)).epsilon(1e-12));

    // halving (x_t - x2) doubles SNR2
    const Formation g = master_at(100.0, s, {15.0, 4.0});
    CHECK(snr_slave(g, s, 0) == doctest::Approx(2.0 * snr_slave(f, s, 0)).epsilon(1e-12));

    const Formation nadir = master_at(100.0, s, {20.0, 4.0});
    CHECK(std::isinf(snr_slave(nadir, s, 0)));
    CHECK(gamma_snr(nadir, s, 0) ==
          doctest::Approx(1.0 / std::sqrt(1.0 + 1.0 / snr_master(nadir, s, 0))));
}

TEST_CASE("gamma_snr combines the two factors") {
    const ScenarioConfig s = load_scenario(kTable1);
    const Formation f = master_at(100.0, s, {-40.0, 80.0});
    const double expect = 1.0 / std::sqrt(1.0 + 1.0 / snr_master(f, s, 0)) /
                          std::sqrt(1.0 + 1.0 / snr_slave(f, s, 0));
    CHECK(gamma_snr(f, s, 0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(gamma_snr(f, s, 0) > 0.0);
    CHECK(gamma_snr(f, s, 0) <= 1.0);
}

TEST_CASE("gamma_rg") {
    const ScenarioConfig s = load_scenario(kTable1);  // B_p = 1.2, theta1 = 45 deg
    SUBCASE("equal look angles give exactly 1") {
        const Vec2 q{20.0 - 70.0, 70.0};  // sin theta2 = sin 45
        CHECK(gamma_rg(q, s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("longhand value at sin theta2 = 0.5") {
        const Vec2 q{19.0, std::sqrt(3.0)};  // offset 1, r2 = 2
        const double s1 = std::sqrt(0.5), s2 = 0.5, bp = 1.2;
        const double expect = ((2.0 + bp) * s2 - (2.0 - bp) * s1) / (bp * (s1 + s2));
        CHECK(expect == doctest::Approx(0.71404).epsilon(1e-4));
        CHECK(gamma_rg(q, s) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("nadir slave limit") {
        CHECK(gamma_rg({20.0, 50.0}, s) == doctest::Approx(-0.8 / 1.2).epsilon(1e-12));
    }
}

TEST_CASE("height of ambiguity") {
    const ScenarioConfig s = load_scenario(kTable1);
    SUBCASE("b_perp = 10 gives 1.2 m at z1 = 100") {
        // choose q2 with |(x_t-x2) - z2| = 10*sqrt(2)
        const Vec2 q2{20.0 - 90.0 - 10.0 * std::sqrt(2.0), 90.0};
        const Formation f = master_at(100.0, s, q2);
        CHECK(perpendicular_baseline(q2, 20.0, s.radar.theta_d) ==
              doctest::Approx(10.0).epsilon(1e-12));
        CHECK(height_of_ambiguity(f, s) == doctest::Approx(1.2).epsilon(1e-12));
    }
    SUBCASE("b_perp = 5.4545 gives 2.2 m") {
        const double bp = 0.12 * 100.0 / 2.2;
        const Vec2 q2{20.0 - 90.0 - bp * std::sqrt(2.0), 90.0};
        const Formation f = master_at(100.0, s, q2);
        CHECK(height_of_ambiguity(f, s) == doctest::Approx(2.2).epsilon(1e-12));
    }
    SUBCASE("zero-b_perp sentinel") {
        // q2 exactly on the master LOS (same tan() rounding as the library)
        const Formation f =
            master_at(100.0, s, {20.0 - std::tan(s.radar.theta_d) * 50.0, 50.0});
        CHECK(std::isinf(height_of_ambiguity(f, s)));
    }
    SUBCASE("h_amb * b_perp = lambda r1 sin(theta1) on random points") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> ux(-120.0, 19.0), uz(1.0, 100.0);
        for (int i = 0; i < 1000; ++i) {
            const double z1 = uz(rng);
            const Formation f = master_at(z1, s, {ux(rng), uz(rng)});
            const double bp = perpendicular_baseline(f.slave, 20.0, s.radar.theta_d);
            if (bp < 1e-6) continue;
            CHECK(height_of_ambiguity(f, s) * bp ==
                  doctest::Approx(s.radar.lambda * z1).epsilon(1e-9));  // r1 sin = z1 tan45
        }
    }
}

TEST_CASE("compute_metrics is consistent with the scalar operations") {
    const ScenarioConfig s = load_scenario(kTable1);
    const Formation f = master_at(100.0, s, {-40.0, 80.0});
    const MetricsReport m = compute_metrics(f, s);
    REQUIRE(static_cast<int>(m.snr1.size()) == s.mission.num_slots);
    CHECK(m.snr1[0] == doctest::Approx(snr_master(f, s, 0)));
    CHECK(m.snr2[0] == doctest::Approx(snr_slave(f, s, 0)));
    CHECK(m.gamma_snr[0] == doctest::Approx(gamma_snr(f, s, 0)));
    CHECK(m.gamma_rg == doctest::Approx(gamma_rg(f.slave, s)));
    CHECK(m.b_perp ==
          doctest::Approx(perpendicular_baseline(f.slave, 20.0, s.radar.theta_d)));
    CHECK(m.h_amb == doctest::Approx(height_of_ambiguity(f, s)));
    CHECK(m.baseline == doctest::Approx(baseline(f)));
}

TEST_CASE("evaluate_constraints") {
    const ScenarioConfig s = load_scenario(kTable1);
    auto schedules = [&](const Formation& f) {
        return std::pair{min_energy_schedule(link_distances(f.master, s.mission), s, 0),
                         min_energy_schedule(link_distances(f.slave, s.mission), s, 1)};
    };

    SUBCASE("placement-rule violation flags C2") {
        Formation f{{-70.0, 100.0}, {-40.0, 80.0}};  // x1 should be -80
        auto [p1, p2] = schedules(f);
        const FeasibilityReport r = evaluate_constraints(f, p1, p2, s);
        CHECK_FALSE(r.at("C2").satisfied);
        CHECK_FALSE(r.feasible());
    }
    SUBCASE("C5 slack in squared form") {
        const Formation f = master_at(100.0, s, {-80.0, 99.0});  // baseline 1 m
        auto [p1, p2] = schedules(f);
        const FeasibilityReport r = evaluate_constraints(f, p1, p2, s);
        CHECK(r.at("C5").slack == doctest::Approx(-3.0).epsilon(1e-9));
        CHECK_FALSE(r.at("C5").satisfied);
    }
    SUBCASE("known feasible formation passes every constraint") {
        const Formation f = master_at(100.0, s, {-71.0, 100.0});
        auto [p1, p2] = schedules(f);
        const FeasibilityReport r = evaluate_constraints(f, p1, p2, s);
        for (const auto& c : r.constraints) {
            INFO(c.name, " slack=", c.slack);
            CHECK(c.satisfied);
        }
        CHECK(r.feasible());
    }
    SUBCASE("power constraints delegate to the comms checks") {
        const Formation f = master_at(100.0, s, {-71.0, 100.0});
        auto [p1, p2] = schedules(f);
        p1[3] = 2.0 * s.comm.p_com_max;  // blow the power cap on one slot
        const FeasibilityReport r = evaluate_constraints(f, p1, p2, s);
        CHECK_FALSE(r.at("C9").satisfied);
        CHECK(r.at("C9").slack == doctest::Approx(-s.comm.p_com_max).epsilon(1e-9));
    }
}
