// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "insarfopt/oracle.hpp"
#include "insarfopt/sca.hpp"

namespace insarfopt {

// All serializers produce deterministic (sorted-key) JSON with only finite
// numbers; infinite slacks/metrics are clamped to +/-1e300.

nlohmann::json metrics_to_json(const MetricsReport& m);
nlohmann::json feasibility_to_json(const FeasibilityReport& r);
nlohmann::json run_report_to_json(const RunReport& r, const ScenarioConfig& s);
nlohmann::json oracle_to_json(const OracleResult& r);

const char* run_mode_name(RunMode m);
RunMode run_mode_from_name(const std::string& name);  // throws ScenarioError

// Canonical dump used for files and byte-identity tests.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace insarfopt
