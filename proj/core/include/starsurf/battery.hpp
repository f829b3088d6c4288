#pragma once

// The verification battery: every desk-checkable claim the artifact commits
// to, runnable both from the CLI (`verify`) and from the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "starsurf/scalar.hpp"

namespace starsurf {

struct BatteryOptions {
    bool skip_exact = false;  // run only the float/numerical criteria
    bool skip_float = false;  // run only the exact criteria
    std::uint64_t seed = kDefaultSeed;
};

struct CheckResult {
    std::string id;      // criterion number, "1".."10"
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CheckResult> run_battery(const BatteryOptions& opts = {});

bool battery_passed(const std::vector<CheckResult>& results);

nlohmann::json battery_report(const std::vector<CheckResult>& results,
                              const BatteryOptions& opts);

}  // namespace starsurf
