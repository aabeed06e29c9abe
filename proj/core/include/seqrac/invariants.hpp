#pragma once

// Self-check suite run by `seqrac verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace seqrac {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    std::int64_t samples = 20000;
    std::uint64_t seed = 7;
};

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options = {});

}  // namespace seqrac
