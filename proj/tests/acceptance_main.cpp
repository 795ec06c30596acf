// Acceptance runner: executes the validation checks one per invocation (or all
// at once) and prints a PASS/FAIL line per check. Registered with CTest at
// per-check granularity; see tests/CMakeLists.txt.

#include <cstring>
#include <iostream>
#include <string>

#include "covertnet/validation.hpp"

using namespace covertnet;

int main(int argc, char** argv) {
    std::string only;
    std::string scenario_path = "configs/adverse.json";
    ValidationConfig cfg;
    bool list = false;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = argv[++i];
        } else if (arg == "--scenario" && i + 1 < argc) {
            scenario_path = argv[++i];
        } else if (arg == "--threads" && i + 1 < argc) {
            cfg.threads = std::strtoull(argv[++i], nullptr, 10);
        } else if (arg == "--quick") {
            cfg.quick = true;
        } else if (arg == "--list") {
            list = true;
        } else {
            std::cerr << "usage: acceptance [--only ID] [--scenario PATH] [--threads N] [--quick] [--list]\n";
            return 1;
        }
    }

    if (list) {
        for (const auto& id : validation_check_ids()) std::cout << id << "\n";
        return 0;
    }

    try {
        cfg.scenario = load_scenario(scenario_path);
        std::vector<CheckResult> results;
        if (only.empty()) {
            results = run_all_validation_checks(cfg);
        } else {
            results.push_back(run_validation_check(only, cfg));
        }
        std::size_t passed = 0;
        for (const auto& r : results) {
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " - " << r.description
                      << "\n       " << r.detail << "\n";
            if (r.passed) ++passed;
        }
        if (results.size() > 1)
            std::cout << passed << "/" << results.size() << " checks passed\n";
        return passed == results.size() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
