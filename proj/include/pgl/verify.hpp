#pragma once

#include <string>
#include <vector>

namespace pgl {

/// One named invariant check; `ref` quotes the formula being exercised.
struct CheckResult {
    std::string name;
    std::string ref;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = false;  // conjunction of the checks
};

/// Names of all invariant suites, in canonical order.
const std::vector<std::string>& verify_suite_names();

/// Runs one suite; throws std::invalid_argument for an unknown name.
SuiteResult run_verify_suite(const std::string& name);

}  // namespace pgl
