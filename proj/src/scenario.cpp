// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace insarfopt {
namespace {

struct RawValue {
    std::vector<double> numbers;
    std::string unit;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "value[, value...] [unit]" with '#' comments.
RawValue parse_value(const std::string& text, int line) {
    RawValue rv;
    rv.line = line;
    std::string body = text;
    if (const auto h = body.find('#'); h != std::string::npos) body = body.substr(0, h);
    body = trim(body);
    std::istringstream in(body);
    std::string tok;
    std::string pending_unit;
    while (std::getline(in, tok, ',')) {
        std::istringstream part(trim(tok));
        double v;
        if (!(part >> v)) throw ScenarioError("line " + std::to_string(line) + ": expected a number, got '" + trim(tok) + "'");
        std::string unit;
        part >> unit;
        if (!unit.empty()) {
            if (!pending_unit.empty() && unit != pending_unit)
                throw ScenarioError("line " + std::to_string(line) + ": mixed units in one value list");
            pending_unit = unit;
        }
        rv.numbers.push_back(v);
    }
    if (rv.numbers.empty()) throw ScenarioError("line " + std::to_string(line) + ": empty value");
    rv.unit = pending_unit;
    return rv;
}

// Unit normalization to SI-linear. "dB_mW" is a dB ratio referenced to
// milliwatt power bookkeeping (used for the comm reference gain so that
// dBm-valued transmit powers and the printed dB gain are consistent).
double to_si(double v, const std::string& unit, const std::string& field) {
    if (unit.empty() || unit == "m" || unit == "s" || unit == "K" || unit == "J" ||
        unit == "W" || unit == "Hz" || unit == "m/s" || unit == "rad" || unit == "bps")
        return v;
    if (unit == "dB" || unit == "dBi") return std::pow(10.0, v / 10.0);
    if (unit == "dBm") return std::pow(10.0, v / 10.0) * 1e-3;
    if (unit == "dBW") return std::pow(10.0, v / 10.0);
    if (unit == "dB_mW") return std::pow(10.0, v / 10.0) * 1e3;
    if (unit == "mW") return v * 1e-3;
    if (unit == "kHz") return v * 1e3;
    if (unit == "MHz") return v * 1e6;
    if (unit == "GHz") return v * 1e9;
    if (unit == "kbps") return v * 1e3;
    if (unit == "Mbps") return v * 1e6;
    if (unit == "Gbps") return v * 1e9;
    if (unit == "deg") return v * std::numbers::pi / 180.0;
    throw ScenarioError(field + ": unknown unit '" + unit + "'");
}

class SectionMap {
public:
    std::map<std::string, std::map<std::string, RawValue>> sections;

    const RawValue& get(const std::string& sec, const std::string& key) const {
        const auto s = sections.find(sec);
        if (s == sections.end()) throw ScenarioError("missing section [" + sec + "]");
        const auto k = s->second.find(key);
        if (k == s->second.end()) throw ScenarioError("[" + sec + "] missing field '" + key + "'");
        return k->second;
    }
    double scalar(const std::string& sec, const std::string& key) const {
        const RawValue& rv = get(sec, key);
        if (rv.numbers.size() != 1)
            throw ScenarioError("[" + sec + "] " + key + ": expected a single value");
        return to_si(rv.numbers[0], rv.unit, key);
    }
    std::vector<double> list(const std::string& sec, const std::string& key) const {
        const RawValue& rv = get(sec, key);
        std::vector<double> out;
        out.reserve(rv.numbers.size());
        for (double v : rv.numbers) out.push_back(to_si(v, rv.unit, key));
        return out;
    }
    bool has(const std::string& sec, const std::string& key) const {
        const auto s = sections.find(sec);
        return s != sections.end() && s->second.count(key) > 0;
    }
};

SectionMap tokenize(const std::string& text) {
    SectionMap sm;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            const auto close = t.find(']');
            if (close == std::string::npos)
                throw ScenarioError("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(t.substr(1, close - 1));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("line " + std::to_string(lineno) + ": expected 'key = value'");
        if (section.empty())
            throw ScenarioError("line " + std::to_string(lineno) + ": field outside any section");
        const std::string key = trim(t.substr(0, eq));
        sm.sections[section][key] = parse_value(t.substr(eq + 1), lineno);
    }
    return sm;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ScenarioError(msg);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void validate(const ScenarioConfig& s) {
    const auto& m = s.mission;
    require(m.num_slots >= 1, "mission.n_slots: N must be >= 1");
    require(m.slot_duration > 0, "mission.slot_duration: delta_t must be > 0");
    require(static_cast<int>(m.v_y.size()) == m.num_slots,
            "mission.v_y: length must equal n_slots");
    for (double v : m.v_y) require(v > 0, "mission.v_y: every entry must be > 0");

    const auto& r = s.radar;
    require(r.sigma0 > 0, "radar.sigma0 must be > 0");
    require(r.p_t > 0, "radar.p_t must be > 0");
    require(r.g_t > 0 && r.g_r > 0, "radar.g_t/g_r must be > 0");
    require(r.lambda > 0, "radar.lambda must be > 0");
    require(r.tau_prf > 0, "radar.tau_prf must be > 0");
    require(r.t_sys > 0, "radar.t_sys must be > 0");
    require(r.b_rg > 0, "radar.b_rg must be > 0");
    require(r.noise_factor > 0, "radar.noise_figure must be > 0");
    require(r.l_atm > 0 && r.l_sys > 0 && r.l_az > 0, "radar losses must be > 0");
    require(r.f0 > 0, "radar.f0 must be > 0");
    require(r.theta_3db > 0 && r.theta_3db < std::numbers::pi,
            "radar.theta_3db must be in (0, pi)");
    require(r.theta_d > 0 && r.theta_d < std::numbers::pi / 2,
            "radar.theta_d must be in (0, pi/2)");
    // Side-looking geometry: the near edge of the beam must not cross nadir.
    require(r.theta_near() > 0, "radar.theta_d must exceed theta_3db/2 (side-looking)");

    const auto& c = s.comm;
    require(c.bandwidth[0] > 0 && c.bandwidth[1] > 0, "comm.b_c must be > 0");
    require(c.gamma > 0, "comm.gamma must be > 0");
    require(c.p_com_max > 0, "comm.p_com_max must be > 0");
    require(c.r_min[0] > 0 && c.r_min[1] > 0, "comm.r_min must be > 0");
    require(c.e_com > 0, "comm.e_com must be > 0");

    const auto& t = s.thresholds;
    require(t.z_min < t.z_max, "thresholds.z_min must be < z_max");
    require(t.z_min > 0, "thresholds.z_min must be > 0");
    require(t.b_min > 0, "thresholds.b_min must be > 0");
    require(t.gamma_snr_min > 0 && t.gamma_snr_min < 1,
            "thresholds.gamma_snr_min must be in (0,1)");
    require(t.gamma_rg_min > 0 && t.gamma_rg_min < 1,
            "thresholds.gamma_rg_min must be in (0,1)");
    require(t.h_amb_min < t.h_amb_max, "thresholds.h_amb_min must be < h_amb_max");
    require(t.h_amb_min > 0, "thresholds.h_amb_min must be > 0");
}

ScenarioConfig parse_scenario(const std::string& text, std::vector<std::string>* warnings) {
    const SectionMap sm = tokenize(text);
    ScenarioConfig s;

    auto& m = s.mission;
    m.num_slots = static_cast<int>(sm.scalar("mission", "n_slots"));
    m.slot_duration = sm.scalar("mission", "slot_duration");
    m.target_x = sm.scalar("mission", "x_t");
    const auto gs = sm.list("mission", "ground_station");
    if (gs.size() != 3) throw ScenarioError("mission.ground_station: expected 3 coordinates");
    m.ground_station = {gs[0], gs[1], gs[2]};
    auto vy = sm.list("mission", "v_y");
    if (vy.size() == 1) vy.assign(static_cast<size_t>(std::max(m.num_slots, 1)), vy[0]);
    m.v_y = std::move(vy);

    auto& r = s.radar;
    r.sigma0 = sm.scalar("radar", "sigma0");
    r.p_t = sm.scalar("radar", "p_t");
    r.g_t = sm.scalar("radar", "g_t");
    r.g_r = sm.scalar("radar", "g_r");
    r.lambda = sm.scalar("radar", "lambda");
    r.tau_prf = sm.scalar("radar", "tau_prf");
    r.t_sys = sm.scalar("radar", "t_sys");
    r.b_rg = sm.scalar("radar", "b_rg");
    r.noise_factor = sm.scalar("radar", "noise_figure");
    r.l_atm = sm.scalar("radar", "l_atm");
    r.l_sys = sm.scalar("radar", "l_sys");
    r.l_az = sm.scalar("radar", "l_az");
    r.f0 = sm.scalar("radar", "f0");
    r.theta_d = sm.scalar("radar", "theta_d");
    r.theta_3db = sm.scalar("radar", "theta_3db");

    auto& c = s.comm;
    auto bc = sm.list("comm", "b_c");
    if (bc.size() == 1) bc.push_back(bc[0]);
    if (bc.size() != 2) throw ScenarioError("comm.b_c: expected one or two bandwidths");
    c.bandwidth = {bc[0], bc[1]};
    c.gamma = sm.scalar("comm", "gamma");
    c.p_com_max = sm.scalar("comm", "p_com_max");
    auto rmin = sm.list("comm", "r_min");
    if (rmin.size() == 1) rmin.push_back(rmin[0]);
    if (rmin.size() != 2) throw ScenarioError("comm.r_min: expected one or two rates");
    c.r_min = {rmin[0], rmin[1]};
    c.e_com = sm.scalar("comm", "e_com");

    auto& t = s.thresholds;
    t.z_min = sm.scalar("thresholds", "z_min");
    t.z_max = sm.scalar("thresholds", "z_max");
    t.b_min = sm.scalar("thresholds", "b_min");
    t.gamma_snr_min = sm.scalar("thresholds", "gamma_snr_min");
    t.gamma_rg_min = sm.scalar("thresholds", "gamma_rg_min");
    t.h_amb_min = sm.scalar("thresholds", "h_amb_min");
    t.h_amb_max = sm.scalar("thresholds", "h_amb_max");

    validate(s);
    if (warnings && s.radar.fractional_bandwidth() > 1.0)
        warnings->push_back("radar: fractional bandwidth B_rg/f0 = " +
                            std::to_string(s.radar.fractional_bandwidth()) +
                            " exceeds 1; check b_rg vs f0");
    return s;
}

ScenarioConfig load_scenario(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), warnings);
}

std::string serialize_scenario(const ScenarioConfig& s) {
    std::ostringstream out;
    out << "# all values SI linear\n[mission]\n";
    out << "n_slots = " << s.mission.num_slots << "\n";
    out << "slot_duration = " << fmt(s.mission.slot_duration) << "\n";
    out << "x_t = " << fmt(s.mission.target_x) << "\n";
    out << "ground_station = " << fmt(s.mission.ground_station[0]) << ", "
        << fmt(s.mission.ground_station[1]) << ", " << fmt(s.mission.ground_station[2]) << "\n";
    out << "v_y = ";
    for (size_t i = 0; i < s.mission.v_y.size(); ++i)
        out << (i ? ", " : "") << fmt(s.mission.v_y[i]);
    out << "\n\n[radar]\n";
    out << "sigma0 = " << fmt(s.radar.sigma0) << "\n";
    out << "p_t = " << fmt(s.radar.p_t) << "\n";
    out << "g_t = " << fmt(s.radar.g_t) << "\n";
    out << "g_r = " << fmt(s.radar.g_r) << "\n";
    out << "lambda = " << fmt(s.radar.lambda) << "\n";
    out << "tau_prf = " << fmt(s.radar.tau_prf) << "\n";
    out << "t_sys = " << fmt(s.radar.t_sys) << "\n";
    out << "b_rg = " << fmt(s.radar.b_rg) << "\n";
    out << "noise_figure = " << fmt(s.radar.noise_factor) << "\n";
    out << "l_atm = " << fmt(s.radar.l_atm) << "\n";
    out << "l_sys = " << fmt(s.radar.l_sys) << "\n";
    out << "l_az = " << fmt(s.radar.l_az) << "\n";
    out << "f0 = " << fmt(s.radar.f0) << "\n";
    out << "theta_d = " << fmt(s.radar.theta_d) << "\n";
    out << "theta_3db = " << fmt(s.radar.theta_3db) << "\n";
    out << "\n[comm]\n";
    out << "b_c = " << fmt(s.comm.bandwidth[0]) << ", " << fmt(s.comm.bandwidth[1]) << "\n";
    out << "gamma = " << fmt(s.comm.gamma) << "\n";
    out << "p_com_max = " << fmt(s.comm.p_com_max) << "\n";
    out << "r_min = " << fmt(s.comm.r_min[0]) << ", " << fmt(s.comm.r_min[1]) << "\n";
    out << "e_com = " << fmt(s.comm.e_com) << "\n";
    out << "\n[thresholds]\n";
    out << "z_min = " << fmt(s.thresholds.z_min) << "\n";
    out << "z_max = " << fmt(s.thresholds.z_max) << "\n";
    out << "b_min = " << fmt(s.thresholds.b_min) << "\n";
    out << "gamma_snr_min = " << fmt(s.thresholds.gamma_snr_min) << "\n";
    out << "gamma_rg_min = " << fmt(s.thresholds.gamma_rg_min) << "\n";
    out << "h_amb_min = " << fmt(s.thresholds.h_amb_min) << "\n";
    out << "h_amb_max = " << fmt(s.thresholds.h_amb_max) << "\n";
    return out.str();
}

std::string scenario_fingerprint(const ScenarioConfig& s) {
    const std::string canon = serialize_scenario(s);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void override_field(ScenarioConfig& s, const std::string& name, double value) {
    if (name == "p_com_max") s.comm.p_com_max = value;
    else if (name == "e_com") s.comm.e_com = value;
    else if (name == "h_amb_max") s.thresholds.h_amb_max = value;
    else if (name == "h_amb_min") s.thresholds.h_amb_min = value;
    else if (name == "gamma_snr_min") s.thresholds.gamma_snr_min = value;
    else if (name == "gamma_rg_min") s.thresholds.gamma_rg_min = value;
    else if (name == "b_min") s.thresholds.b_min = value;
    else if (name == "b_rg") s.radar.b_rg = value;
    else throw ScenarioError("unknown override field: " + name);
    validate(s);
}

std::vector<double> along_track_positions(const MissionConfig& m) {
    std::vector<double> y(static_cast<size_t>(m.num_slots));
    y[0] = 0.0;
    for (int n = 1; n < m.num_slots; ++n)
        y[static_cast<size_t>(n)] = y[static_cast<size_t>(n - 1)] +
                                    m.v_y[static_cast<size_t>(n - 1)] * m.slot_duration;
    return y;
}

double radar_constant(const ScenarioConfig& s, int slot) {
    const auto& r = s.radar;
    const double v = s.mission.v_y.at(static_cast<size_t>(slot));
    const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    const double num = r.sigma0 * r.p_t * r.g_t * r.g_r * r.lambda * r.lambda * r.lambda *
                       kSpeedOfLight * r.tau_prf;
    const double den = 256.0 * pi3 * v * kBoltzmann * r.t_sys * r.b_rg * r.noise_factor *
                       r.l_atm * r.l_sys * r.l_az;
    return num / den;
}

}  // namespace insarfopt
