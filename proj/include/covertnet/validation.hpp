#pragma once

#include <string>
#include <vector>

#include "covertnet/montecarlo.hpp"
#include "covertnet/scenario.hpp"

namespace covertnet {

struct CheckResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
};

// Inputs for the validation suite. The scenario is the documented benchmark
// topology; the annulus describes the same geometry so checks that need fresh
// random topologies can draw them.
struct ValidationConfig {
    Scenario scenario;
    AnnulusSpec annulus{468.11, 1414.0, 1000, 0};
    std::size_t threads = 1;
    std::size_t dep_trials = 10000;
    KminSearchOptions kmin_opts{};
    std::size_t kmin_seeds = 10;
    // Scales the heavier statistical checks down for smoke runs.
    bool quick = false;
};

const std::vector<std::string>& validation_check_ids();

CheckResult run_validation_check(const std::string& id, const ValidationConfig& cfg);

std::vector<CheckResult> run_all_validation_checks(const ValidationConfig& cfg);

}  // namespace covertnet
