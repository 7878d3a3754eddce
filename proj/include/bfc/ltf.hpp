#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfc/hypercube.hpp"
#include "bfc/rational.hpp"

namespace bfc {

struct WeightVector {
    std::vector<double> w;
    double norm = 0.0;  // cached ||w||_2

    WeightVector() = default;
    explicit WeightVector(std::vector<double> weights);

    int dim() const { return int(w.size()); }
    double recompute_norm() const;
};

/// f(x) = sign(w·x - theta), sign(0) = +1.
struct Ltf {
    WeightVector weights;
    double theta = 0.0;

    Ltf() = default;
    Ltf(std::vector<double> w, double t) : weights(std::move(w)), theta(t) {}

    int dim() const { return weights.dim(); }
    int eval(uint32_t point_mask) const;
};

TruthTable to_truth_table(const Ltf& f);
TruthTable to_truth_table_exact(const std::vector<Rational>& w, const Rational& theta);

/// proper.w is |w| sorted nonincreasing; w[perm[i]] = signs[i] * proper.w[i].
struct ProperForm {
    WeightVector proper;
    std::vector<int> perm;
    std::vector<int> signs;
};

ProperForm make_proper(const WeightVector& w);
std::vector<Rational> make_proper_exact(const std::vector<Rational>& w);

enum class Verdict { No, Yes, Indeterminate };

struct DegeneracyResult {
    Verdict verdict = Verdict::No;
    uint32_t witness = 0;  // point with w·x = theta when verdict == Yes
};

// Float mode: Indeterminate when some margin is below 1e-9·||w||.
DegeneracyResult is_degenerate(const Ltf& f);
DegeneracyResult is_degenerate_exact(const std::vector<Rational>& w, const Rational& theta);

struct CriticalIndexResult {
    std::optional<int> index;   // 1-based; nullopt = infinite
    std::vector<double> sigma;  // sigma[i] = sqrt(sum_{j>=i} w_j^2), 0-indexed
};

// Requires a proper vector; trailing zero coordinates are skipped and the
// verdict is taken on the nonzero prefix.
CriticalIndexResult critical_index(const WeightVector& proper_w, double tau);

bool is_regular(const WeightVector& w, double tau);

/// Degree-0/1 coefficients with exact integer numerators over 2^n.
struct ChowParams {
    int n = 0;
    int64_t num_mean = 0;
    std::vector<int64_t> num_coords;

    double mean() const { return double(num_mean) / double(table_size(n)); }
    double coord(int i) const { return double(num_coords[i]) / double(table_size(n)); }
    double w1() const;
};

ChowParams chow_parameters(const TruthTable& f);
ChowParams chow_parameters(const Ltf& f);

// g(x,y) = sign(w·x + theta'·y) with theta' = -theta retuned inside the same
// function so no point of the lifted cube is on the hyperplane.
// Rejects degenerate inputs.
Ltf balanced_lift(const Ltf& f);

// Text form "w1,w2,...,wn ; theta"; fractions allowed.
std::string format_ltf(const Ltf& f);
std::optional<Ltf> parse_ltf(const std::string& text);
bool parse_ltf_exact(const std::string& text, std::vector<Rational>& w, Rational& theta);
std::optional<std::vector<double>> parse_weights(const std::string& text);
bool parse_weights_exact(const std::string& text, std::vector<Rational>& w);

}  // namespace bfc
