// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace insarfopt {

// Physical constants (not configurable).
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a solve/search proves the scenario has no feasible point.
class InfeasibleScenarioError : public std::runtime_error {
public:
    explicit InfeasibleScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct MissionConfig {
    int num_slots = 0;                  // N
    double slot_duration = 0.0;         // delta_t [s]
    std::vector<double> v_y;            // per-slot speed [m/s], length N
    double target_x = 0.0;              // x_t [m], swath center line
    std::array<double, 3> ground_station{};  // g = (x_g, y_g, z_g) [m]
};

// All values stored SI-linear; dB conversion happens at load time.
struct RadarParams {
    double sigma0 = 0.0;        // normalized backscatter, linear
    double p_t = 0.0;           // radar transmit power [W]
    double g_t = 0.0;           // transmit gain, linear
    double g_r = 0.0;           // receive gain, linear
    double lambda = 0.0;        // wavelength [m]
    double tau_prf = 0.0;       // pulse duration x PRF, dimensionless
    double t_sys = 0.0;         // receiver temperature [K]
    double b_rg = 0.0;          // range bandwidth [Hz]
    double noise_factor = 0.0;  // F, linear
    double l_atm = 0.0;         // losses, linear
    double l_sys = 0.0;
    double l_az = 0.0;
    double f0 = 0.0;            // center frequency [Hz]
    double theta_d = 0.0;       // depression angle from vertical [rad]
    double theta_3db = 0.0;     // elevation beamwidth [rad]

    double fractional_bandwidth() const { return b_rg / f0; }
    double theta_near() const { return theta_d - 0.5 * theta_3db; }
    double theta_far() const { return theta_d + 0.5 * theta_3db; }
};

struct CommParams {
    std::array<double, 2> bandwidth{};  // B_c,i [Hz]
    double gamma = 0.0;                 // reference gain over noise, linear SI (per W)
    double p_com_max = 0.0;             // [W]
    std::array<double, 2> r_min{};      // [bit/s]
    double e_com = 0.0;                 // [J]
};

struct Thresholds {
    double z_min = 0.0, z_max = 0.0;    // altitude box [m]
    double b_min = 0.0;                 // min baseline [m]
    double gamma_snr_min = 0.0;         // in (0,1)
    double gamma_rg_min = 0.0;          // in (0,1)
    double h_amb_min = 0.0, h_amb_max = 0.0;  // HoA window [m]
};

struct ScenarioConfig {
    MissionConfig mission;
    RadarParams radar;
    CommParams comm;
    Thresholds thresholds;
};

// Throws ScenarioError naming the first violated invariant.
void validate(const ScenarioConfig& s);

// Loads, unit-normalizes and validates a scenario file. Non-fatal anomalies
// (e.g. fractional bandwidth > 1) are appended to `warnings` if given.
ScenarioConfig load_scenario(const std::string& path,
                             std::vector<std::string>* warnings = nullptr);
ScenarioConfig parse_scenario(const std::string& text,
                              std::vector<std::string>* warnings = nullptr);

// Canonical SI-linear serialization; parse_scenario(serialize_scenario(s))
// reproduces s field-identically.
std::string serialize_scenario(const ScenarioConfig& s);

// FNV-1a over the canonical serialization; identifies a scenario in reports.
std::string scenario_fingerprint(const ScenarioConfig& s);

// Named-field override used by sweeps and the C API. Supported names:
// p_com_max, h_amb_max, h_amb_min, gamma_snr_min, gamma_rg_min, b_min,
// e_com, b_rg. Values are SI-linear. Re-validates; throws ScenarioError.
void override_field(ScenarioConfig& s, const std::string& name, double value);

// y[0] = 0, y[n+1] = y[n] + v_y[n]*delta_t.
std::vector<double> along_track_positions(const MissionConfig& m);

// c_n for 0-based slot index.
double radar_constant(const ScenarioConfig& s, int slot);

}  // namespace insarfopt
