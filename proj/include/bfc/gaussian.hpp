#pragma once

#include <functional>
#include <vector>

namespace bfc {

double normal_pdf(double t);
double normal_cdf(double t);

// mean_sign(theta) = E_{X~N(0,1)}[sign(X - theta)] = 1 - 2*Phi(theta);
// strictly decreasing with mean_sign(0) = 0.
double mean_sign(double theta);
// Functional inverse on [-1,1]; bisection plus one Newton step,
// |mean_sign(mean_sign_inv(v)) - v| <= 1e-12. ±1 map to ∓infinity.
double mean_sign_inv(double v);
// degree1_weight(v) = (2 phi(mean_sign_inv(v)))^2; equals 2/pi at v = 0.
double degree1_weight(double v);

// E_{x~N^n}[sign(w·x - theta)] in closed form.
double gauss_mean_sign(const std::vector<double>& w, double theta);

/// Degree-1 coefficients of sign(w_H·x_H + y) with Boolean head and Gaussian
/// tail of standard deviation tail_sigma, by exact head enumeration.
struct MixedDegree1 {
    std::vector<double> head;  // coefficient per head coordinate
    double tail = 0.0;         // coefficient on the (standardized) Gaussian
    double total = 0.0;        // sum of squares, head + tail
};

// Single collapsed Gaussian tail; closed forms per head assignment.
MixedDegree1 mixed_degree1(const std::vector<double>& head_w, double tail_sigma);

// Independent Gaussian per tail coordinate; tail coefficients evaluated by
// quadrature, one entry of `tails` per coordinate. Independent route used to
// check that collapsing the tail preserves the total.
struct MixedDegree1Split {
    std::vector<double> head;
    std::vector<double> tails;
    double total = 0.0;
};

MixedDegree1Split mixed_degree1_split(const std::vector<double>& head_w,
                                      const std::vector<double>& tail_w);

// Composite Gauss-Legendre of a smooth integrand against the N(0,1) weight.
double gauss_quad(const std::function<double(double)>& f);

}  // namespace bfc
