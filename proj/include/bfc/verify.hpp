#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bfc {

struct CheckResult {
    std::string key;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    uint64_t seed = 12345;
    int threads = 0;
    std::string catalog_dir = "catalogs";
    std::string filter;  // substring match on check keys; empty = all
};

// Numerical verification of every testable inequality and identity the
// library is built around; one row per named check.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

}  // namespace bfc
