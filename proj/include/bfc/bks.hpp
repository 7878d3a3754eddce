#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bfc/enumeration.hpp"

namespace bfc {

/// Minimum level-1 Fourier weight over the zero-threshold catalog at K vars.
struct BksReport {
    int k = 0;
    double gamma = 0.0;
    LtfRecord argmin;                                  // lexicographically least minimizer
    std::vector<std::pair<double, uint64_t>> histogram;  // (w1 value, full count)
    uint64_t classes = 0;
    uint64_t full_count = 0;
};

BksReport gamma_search(int k, const std::string& catalog_dir, int threads = 0);

std::string bks_report_json(const BksReport& r);

// W^1 by direct correlation, n <= 28.
double w1_of_ltf(const Ltf& f);

// Exact W^1 of sign(head·x_H + z_coeff * sum_{j<=m} z_j) using the
// binomial collapse of the symmetric tail; works for any m.
double w1_sum_form(const std::vector<double>& head, double z_coeff, int m);

// Junta cutoff for the large-critical-index branch: ceil((2/d^2) ln(4/d)).
int64_t junta_cutoff(double delta);

/// One run of the variable-reduction pipeline on a zero-threshold LTF.
struct ReductionTrace {
    std::vector<double> input_weights;  // proper form actually reduced
    double delta = 0.0;
    int m = 0;
    bool case_two = false;     // false: junta branch, true: head+tail branch
    int64_t cutoff = 0;        // L(delta)
    std::optional<int> critical;

    std::vector<double> head;  // w_H
    double tail_norm = 0.0;    // ||w_T||

    double w1_input = 0.0;       // W^1[f], exact
    double dist_junta = -1.0;    // Case I: Hamming distance to the junta
    double w1_output = 0.0;      // W^1[g], exact
    double w1_mixed = 0.0;       // Case II: Gaussianized tail, independent route
    double w1_collapsed = 0.0;   // Case II: single collapsed Gaussian
    std::vector<double> output_weights;  // head ++ m copies of z coefficient
    double z_coeff = 0.0;
};

// Requires a nondegenerate zero-threshold input; weights made proper first.
ReductionTrace reduce_w1(const Ltf& f, double delta, int m);

std::string reduction_trace_json(const ReductionTrace& t);

}  // namespace bfc
