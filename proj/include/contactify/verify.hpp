#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace contactify::verify {

/// Outcome of one property suite.  max_error is the worst error divided by
/// the tolerance of its check, so pass means max_error <= 1 across every
/// check in the suite; worst names the check that attained it.
struct SuiteResult {
    std::string suite;
    int samples;
    double max_error;
    std::string worst;
    bool pass;
};

/// Per-check tolerance overrides, keyed by check name.  Overrides can only
/// loosen: the effective tolerance is max(default, override).
using Tolerances = std::map<std::string, double>;

SuiteResult run_lie_core(int samples, std::uint64_t seed,
                         const Tolerances& overrides = {});
SuiteResult run_orbit(int samples, std::uint64_t seed,
                      const Tolerances& overrides = {});
SuiteResult run_integrality(int samples, std::uint64_t seed,
                            const Tolerances& overrides = {});
SuiteResult run_contact(int samples, std::uint64_t seed,
                        const Tolerances& overrides = {});
SuiteResult run_dynamics(int samples, std::uint64_t seed,
                         const Tolerances& overrides = {});

/// All five suites in a fixed order, sharing the seed.
std::vector<SuiteResult> run_all(int samples, std::uint64_t seed,
                                 const Tolerances& overrides = {});

} // namespace contactify::verify
