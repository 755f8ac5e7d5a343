#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvata::verify {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;   // worst-case numbers backing the outcome
    double seconds = 0.0;
};

/// Run the full self-check battery: closed-form identities, discretized
/// eigenvalue calibrations, verdict cross-checks. Deterministic.
std::vector<CriterionResult> run_acceptance();

/// Print one pass/fail line per criterion; returns the number of failures.
int report(const std::vector<CriterionResult>& results, std::ostream& os);

} // namespace curvata::verify
