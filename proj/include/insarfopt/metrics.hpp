// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "insarfopt/geometry.hpp"

namespace insarfopt {

struct MetricsReport {
    std::vector<double> snr1, snr2;   // per slot, linear (snr2 may be +inf)
    std::vector<double> gamma_snr;    // per slot, in (0,1]
    double gamma_rg = 0.0;
    double h_amb = 0.0;               // +inf when b_perp = 0
    double b_perp = 0.0;
    double baseline = 0.0;
};

struct ConstraintRecord {
    std::string name;
    bool satisfied = false;
    double slack = 0.0;  // positive = satisfied margin, in the solver's algebraic form
    std::string description;
};

struct FeasibilityReport {
    std::vector<ConstraintRecord> constraints;
    bool feasible() const;
    const ConstraintRecord& at(const std::string& name) const;
};

// SNR1 = c_n / (r1^3 sin(theta1))
double snr_master(const Formation& f, const ScenarioConfig& s, int slot);

// SNR2 = c_n / (r1^2 (x_t - x2)); +inf at the nadir limit x2 = x_t.
double snr_slave(const Formation& f, const ScenarioConfig& s, int slot);

// prod_i 1/sqrt(1 + 1/SNR_i); infinite SNR contributes a factor of exactly 1.
double gamma_snr(const Formation& f, const ScenarioConfig& s, int slot);

// Baseline decorrelation from the two look angles and the fractional bandwidth.
double gamma_rg(const Vec2& q2, const ScenarioConfig& s);

// h_amb = lambda r1 sin(theta1) / b_perp; +inf when b_perp = 0.
double height_of_ambiguity(const Formation& f, const ScenarioConfig& s);

MetricsReport compute_metrics(const Formation& f, const ScenarioConfig& s);

// Evaluates C1..C11 (power constraints use the supplied schedules).
FeasibilityReport evaluate_constraints(const Formation& f,
                                       const std::vector<double>& p1,
                                       const std::vector<double>& p2,
                                       const ScenarioConfig& s);

}  // namespace insarfopt
