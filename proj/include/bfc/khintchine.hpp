#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bfc/ltf.hpp"

namespace bfc {

// K(w) = E_x|w·x|, exact summation for n <= 28. Scale-covariant.
double khintchine_constant(const WeightVector& w);

// Streaming Monte Carlo fallback for n > 28; standard error out.
double khintchine_constant_mc(const WeightVector& w, uint64_t samples, uint64_t seed,
                              double* std_err = nullptr);

// Exact E|w·x| for rational weights.
Rational khintchine_exact(const std::vector<Rational>& w);

// d(w) = min ||w - u|| over the 4*C(n,2) vectors u = (±e_i ± e_j)/sqrt(2);
// all candidates are checked. Requires a unit vector.
double dist_to_extremal(const WeightVector& unit_w);

/// Moments of ell(x) = |w·x|.
struct EllMoments {
    double mean = 0.0;
    double var = 0.0;
    std::vector<double> influences;
    double weight_ge4 = 0.0;  // Fourier mass at levels >= 4
};

EllMoments ell_moments(const WeightVector& w);  // n <= 24

struct RobustScanConfig {
    int n_min = 2;
    int n_max = 4;
    bool grid = true;        // primitive integer directions, entries <= grid_denom
    bool random = true;      // uniform sphere, made proper
    bool perturb = true;     // perturbations of (1,1,0,..)/sqrt(2) at radii .05...5
    int grid_denom = 8;
    double d_min = 0.1;
    uint64_t samples = 1000;  // per (n, sampler) for the randomized samplers
    uint64_t seed = 0;
    int threads = 0;
};

struct RobustScanReport {
    RobustScanConfig config;
    uint64_t samples_total = 0;
    uint64_t ratios_counted = 0;  // samples with d(w) >= d_min
    double min_k = 0.0;
    double min_ratio = 0.0;       // empirical robustness constant
    std::vector<double> argmin;   // vector attaining min_ratio
    uint64_t khintchine_violations = 0;  // K < 1/sqrt(2) - 1e-12
    uint64_t koenig_violations = 0;      // K < sqrt(2/pi)-(1-sqrt(2/pi))w1 - 1e-12
    uint64_t suspicious_rechecked = 0;   // ratios < 1e-6 re-verified exactly
};

/// Per-sample CSV row: "w1 w2 ...",K,d,ratio (ratio empty when d < d_min).
using CsvRow = std::function<void(const std::string&)>;

RobustScanReport robust_scan(const RobustScanConfig& cfg, const CsvRow& csv = nullptr);

std::string robust_report_json(const RobustScanReport& r);

}  // namespace bfc
