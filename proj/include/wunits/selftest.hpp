#pragma once

#include <string>
#include <vector>

#include "wunits/bignum.hpp"

namespace wunits {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Registered suite names, in execution order: delta_eta, wtog, pm, jseries,
// wp, wcount, algdep.
std::vector<std::string> selftest_suite_names();

// Run the named suites (all of them if `suites` is empty) and collect one
// result per suite. Unknown names throw domain_error. All random choices use
// fixed seeds, so the output is reproducible for a given policy.
std::vector<SuiteResult> run_selftests(const std::vector<std::string>& suites,
                                       const PrecisionPolicy& policy);

}  // namespace wunits
