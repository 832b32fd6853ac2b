#pragma once

#include "wcsp/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wcsp {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int cases = 100;
    /// Name of an invariant whose transformed side gets a corrupted table, to
    /// check that failures are reported and localized. Empty for none.
    std::string corrupt;
};

struct CheckOutcome {
    std::string suite;
    std::string invariant;
    int cases = 0;
    int failures = 0;
    std::string firstFailure;

    bool passed() const { return failures == 0; }
};

/// Suites: "oracle", "reductions", "cut", "classifier", or "all".
std::vector<std::string> suiteNames();
std::vector<std::string> invariantNames();

/// Throws InputError for an unknown or empty suite name.
std::vector<CheckOutcome> runSuite(const std::string& suite, const VerifyOptions& options);

/// Adds 1 to every entry of the first function used by a constraint.
void corruptInstance(Instance& instance);

}  // namespace wcsp
