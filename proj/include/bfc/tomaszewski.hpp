#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfc/enumeration.hpp"
#include "bfc/ltf.hpp"

namespace bfc {

/// Pr[|w·x| <= a] (inclusive) and Pr[|w·x| >= a], by exact enumeration.
struct TailProb {
    double in_prob = 0.0;
    double out_prob = 0.0;
    Verdict verdict = Verdict::No;  // Indeterminate when a margin is borderline
};

// Float mode, n <= 28; Indeterminate when some ||w·x| - a| < 1e-9 ||w||.
TailProb t_of_w(const WeightVector& w, double a = 1.0);

struct ExactTailProb {
    Rational in_prob;
    Rational out_prob;
};

// Rational mode; comparisons run on squares so `normalize` can divide by
// ||w|| without leaving the rationals.
ExactTailProb t_of_w_exact(const std::vector<Rational>& w, const Rational& a,
                           bool normalize = false);

// Monte Carlo fallback for n > 28; standard error out.
TailProb t_of_w_mc(const WeightVector& w, double a, uint64_t samples, uint64_t seed,
                   double* std_err = nullptr);

/// Outcome of min ||w|| s.t. w·x >= 1 for x in P.
struct FeasibilityResult {
    bool feasible = false;          // false => nu = +inf
    Rational nu_sq;                 // ||w*||^2, exact
    std::vector<Rational> witness;  // minimizing w
    bool separable = false;         // nu < 1, strict, decided exactly
    bool exact_certificate = false; // witness re-verified in the rationals
};

// Points are index masks into {-1,1}^m. Exhaustive active-set search with
// exact KKT certificates; infeasibility is a valid result.
FeasibilityResult min_norm_feasibility(const std::vector<uint32_t>& points, int m);

struct TomReport {
    int m = 0;
    Rational value;                 // 1 - 2|P|/2^m at the winning set
    uint64_t p_size = 0;            // positive side of the winning separable set
    uint64_t s_size = 0;            // full symmetric set, 2|P|
    std::vector<double> witness;    // unit vector with margin > 1 on P
    uint64_t candidates = 0;
    uint64_t oracle_calls = 0;
};

// Exact infimum of Pr[|w·x| <= 1] over unit w in m dimensions, m <= 5.
TomReport t_sphere(int m, const std::string& catalog_dir, int threads = 0);

std::string tom_report_json(const TomReport& r);

struct ReduceTResult {
    WeightVector v;
    bool small_branch = false;
    double eta = 0.0;
    double t_param = 0.0;
    int64_t k_param = 0;
    std::optional<int> critical;
};

// Dimension reduction preserving the tail probability up to eps:
// eta = eps/64, t = 8 log2(16/eta), K = ceil((t/eta^2) ln(t/eta)).
// Large critical index keeps the head and appends the tail norm; small
// critical index replaces the tail by ceil(4/eta^2) equal coordinates.
ReduceTResult reduce_dimension_t(const WeightVector& unit_w, double eps);

std::string reduce_t_json(const ReduceTResult& r, const WeightVector& input);

}  // namespace bfc
