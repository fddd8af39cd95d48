// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "insarfopt/geometry.hpp"

using namespace insarfopt;

namespace {
const std::string kTable1 = std::string(INSARFOPT_DATA_DIR) + "/table1.scenario";
const double kPi4 = std::numbers::pi / 4.0;
}

TEST_CASE("baseline") {
    Formation f{{0.0, 0.0}, {3.0, 4.0}};
    CHECK(baseline(f) == doctest::Approx(5.0));
    f.slave = {0.0, 7.0};
    CHECK(baseline(f) == doctest::Approx(7.0));
    f.slave = f.master;
    CHECK(baseline(f) == doctest::Approx(0.0));
}

TEST_CASE("footprint edges and width") {
    const ScenarioConfig s = load_scenario(kTable1);
    const FootprintInterval a = footprint({-80.0, 100.0}, s.radar);
    CHECK(a.near_edge == doctest::Approx(-22.2650).epsilon(1e-4));
    CHECK(a.far_edge == doctest::Approx(93.2051).epsilon(1e-4));

    const FootprintInterval b = footprint({0.0, 1.0}, s.radar);
    CHECK(b.near_edge == doctest::Approx(0.57735).epsilon(1e-4));
    CHECK(b.far_edge == doctest::Approx(1.73205).epsilon(1e-4));

    // width is z*(tan far - tan near) exactly, so linear in z
    const double w1 = footprint({0.0, 1.0}, s.radar).width();
    const double w50 = footprint({12.0, 50.0}, s.radar).width();
    CHECK(w50 == doctest::Approx(50.0 * w1).epsilon(1e-12));
}

TEST_CASE("swath") {
    const ScenarioConfig s = load_scenario(kTable1);
    SUBCASE("colocated closed form") {
        Formation f{{-80.0, 100.0}, {-80.0, 100.0}};
        const double expect = 100.0 * (std::tan(std::numbers::pi / 3.0) -
                                       std::tan(std::numbers::pi / 6.0));
        CHECK(swath(f, s.radar) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(swath(f, s.radar) == doctest::Approx(115.470053838).epsilon(1e-9));
    }
    SUBCASE("disjoint footprints clamp to zero") {
        Formation f{{-80.0, 100.0}, {100.0, 1.0}};
        CHECK(swath(f, s.radar) == 0.0);
    }
    SUBCASE("partial overlap") {
        Formation f{{-80.0, 100.0}, {-30.0, 50.0}};
        CHECK(swath(f, s.radar) == doctest::Approx(57.735).epsilon(1e-4));
    }
    SUBCASE("symmetric under swapping UAVs") {
        Formation f{{-80.0, 100.0}, {-30.0, 50.0}};
        Formation g{f.slave, f.master};
        CHECK(swath(f, s.radar) == swath(g, s.radar));
    }
}

TEST_CASE("coverage") {
    const ScenarioConfig s = load_scenario(kTable1);
    Formation f{{-80.0, 100.0}, {-80.0, 100.0}};
    const double sw = swath(f, s.radar);
    // N = 100 slots of 2 m/s * 0.5 s -> 100 m along track
    CHECK(coverage(f, s.mission, s.radar) == doctest::Approx(sw * 100.0).epsilon(1e-12));

    Formation disjoint{{-80.0, 100.0}, {100.0, 1.0}};
    CHECK(coverage(disjoint, s.mission, s.radar) == 0.0);

    ScenarioConfig half = s;
    half.mission.slot_duration *= 0.5;
    CHECK(coverage(f, half.mission, half.radar) ==
          doctest::Approx(0.5 * coverage(f, s.mission, s.radar)));
}

TEST_CASE("slant ranges") {
    Formation f{{-80.0, 100.0}, {20.0, 50.0}};
    auto [r1, r2] = slant_ranges(f, 20.0);
    CHECK(r1 == doctest::Approx(100.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r2 == doctest::Approx(50.0));
    f.slave = {10.0, 4.0};
    CHECK(slant_ranges(f, 20.0).second == doctest::Approx(std::sqrt(116.0)).epsilon(1e-12));
}

TEST_CASE("master placement rule and look angle") {
    CHECK(master_x_for(100.0, 20.0, kPi4) == doctest::Approx(-80.0));
    CHECK(master_x_for(50.0, 20.0, kPi4) == doctest::Approx(-30.0));
    CHECK(master_x_for(1e-9, 20.0, kPi4) == doctest::Approx(20.0));
    CHECK(look_angle_master(kPi4) == kPi4);
    CHECK(look_angle_master(0.5) == 0.5);
}

TEST_CASE("slave look angle sine") {
    CHECK(sin_look_angle_slave({20.0, 50.0}, 20.0) == doctest::Approx(0.0));
    CHECK(sin_look_angle_slave({20.0 - 37.0, 37.0}, 20.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sin_look_angle_slave({10.0, 4.0}, 20.0) ==
          doctest::Approx(10.0 / std::sqrt(116.0)).epsilon(1e-12));
}

TEST_CASE("perpendicular baseline and projection point") {
    SUBCASE("point on the LOS projects to itself") {
        const Vec2 q{20.0 - 30.0, 30.0};  // x2 = x_t - z2*tan(45)
        CHECK(perpendicular_baseline(q, 20.0, kPi4) == doctest::Approx(0.0));
        const Vec2 p = projection_point(q, 20.0, kPi4);
        CHECK(p.x == doctest::Approx(q.x));
        CHECK(p.z == doctest::Approx(q.z));
    }
    SUBCASE("hand-solved cases") {
        CHECK(perpendicular_baseline({10.0, 4.0}, 20.0, kPi4) ==
              doctest::Approx(6.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(perpendicular_baseline({-80.0, 90.0}, 20.0, kPi4) ==
              doctest::Approx(10.0 / std::sqrt(2.0)).epsilon(1e-12));
        const Vec2 p = projection_point({10.0, 4.0}, 20.0, kPi4);
        CHECK(p.x == doctest::Approx(13.0).epsilon(1e-12));
        CHECK(p.z == doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("closed form agrees with the projection distance on random points") {
        std::mt19937_64 rng(20260826);
        std::uniform_real_distribution<double> ux(-120.0, 20.0), uz(1.0, 100.0),
            uth(0.2, 1.3);
        for (int i = 0; i < 10000; ++i) {
            const Vec2 q{ux(rng), uz(rng)};
            const double th = uth(rng);
            const Vec2 p = projection_point(q, 20.0, th);
            // p lies on the LOS line x = x_t - tan(th)*z (angle from vertical)
            CHECK(p.x == doctest::Approx(20.0 - std::tan(th) * p.z).epsilon(1e-9));
            // segment q->p is perpendicular to the LOS direction (-tan th, 1)
            const double dot = (p.x - q.x) * (-std::tan(th)) + (p.z - q.z) * 1.0;
            CHECK(std::abs(dot) < 1e-7);
            const double d = std::hypot(p.x - q.x, p.z - q.z);
            const double b = perpendicular_baseline(q, 20.0, th);
            CHECK(b == doctest::Approx(d).epsilon(1e-9));
        }
    }
    SUBCASE("b_perp <= baseline when q1 is on the LOS") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ux(-120.0, 20.0), uz(1.0, 100.0);
        for (int i = 0; i < 1000; ++i) {
            const double z1 = uz(rng);
            Formation f{{20.0 - z1, z1}, {ux(rng), uz(rng)}};
            CHECK(perpendicular_baseline(f.slave, 20.0, kPi4) <= baseline(f) + 1e-9);
        }
    }
}
