#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bfc/common.hpp"
#include "bfc/gaussian.hpp"
#include "bfc/hypercube.hpp"
#include "bfc/ltf.hpp"

using namespace bfc;

namespace {
constexpr double kTwoOverPi = 0.6366197723675814;
}

TEST_CASE("mean_sign basics") {
    CHECK(mean_sign(0.0) == doctest::Approx(0.0));
    CHECK(mean_sign(-40.0) == doctest::Approx(1.0));
    CHECK(mean_sign(40.0) == doctest::Approx(-1.0));
    // strictly decreasing on a grid
    double prev = 2.0;
    for (double t = -6.0; t <= 6.0; t += 0.05) {
        double v = mean_sign(t);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("inverse of mean_sign") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ud(-0.9999, 0.9999);
    for (int it = 0; it < 2000; ++it) {
        double v = ud(rng);
        double t = mean_sign_inv(v);
        CHECK(std::fabs(mean_sign(t) - v) <= 1e-12);
    }
    CHECK(std::isinf(mean_sign_inv(1.0)));
    CHECK(std::isinf(mean_sign_inv(-1.0)));
    CHECK_THROWS_AS(mean_sign_inv(1.5), std::invalid_argument);
}

TEST_CASE("degree-1 weight function") {
    CHECK(degree1_weight(0.0) == doctest::Approx(kTwoOverPi).epsilon(1e-12));
    CHECK(degree1_weight(1.0) == 0.0);
    CHECK(degree1_weight(-1.0) == 0.0);
    // consistency: degree1_weight(mean_sign(t)) = (2 phi(t))^2
    for (double t = -5.0; t <= 5.0; t += 0.1) {
        double lhs = degree1_weight(mean_sign(t));
        double rhs = 4.0 * normal_pdf(t) * normal_pdf(t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

namespace {

// Panelled Gauss-Legendre on [a,b] for integrands smooth inside the panel;
// callers split at kinks themselves.
double gl_on(const std::function<double(double)>& f, double a, double b) {
    const double node[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                             -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                             0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                             0.9739065285171717};
    const double wt[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                           0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                           0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                           0.0666713443086881};
    double acc = 0.0;
    const int panels = 32;
    double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * width;
        for (int i = 0; i < 10; ++i) {
            acc += 0.5 * width * wt[i] * f(mid + 0.5 * width * node[i]);
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("E|X - theta| matches the closed form") {
    // E|X - theta| = 2 phi(theta) - theta mean_sign(theta); the oracle splits
    // the integral at the kink so each piece is smooth.
    for (double theta : {0.0, 0.3, -0.7, 1.5, -2.2}) {
        auto f = [theta](double x) { return std::fabs(x - theta) * normal_pdf(x); };
        double quad = gl_on(f, -9.0, theta) + gl_on(f, theta, 9.0);
        double closed = 2.0 * normal_pdf(theta) - theta * mean_sign(theta);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-12));
    }
    // at 0 this is sqrt(2/pi)
    CHECK(2.0 * normal_pdf(0.0) == doctest::Approx(std::sqrt(kTwoOverPi)).epsilon(1e-12));
}

TEST_CASE("Lipschitz bounds on a dense grid") {
    const double lim_mu = std::sqrt(kTwoOverPi);
    double prev_t = -6.0, prev_mu = mean_sign(prev_t);
    for (double t = -5.99; t <= 6.0; t += 0.01) {
        double m = mean_sign(t);
        CHECK(std::fabs(m - prev_mu) <= lim_mu * (t - prev_t) + 1e-12);
        prev_t = t;
        prev_mu = m;
    }
    double prev_v = -0.999, prev_w = degree1_weight(prev_v);
    for (double v = -0.998; v <= 0.999; v += 0.001) {
        double w = degree1_weight(v);
        CHECK(std::fabs(w - prev_w) <= (v - prev_v) + 1e-12);
        prev_v = v;
        prev_w = w;
    }
}

TEST_CASE("mixed degree-1 coefficients, empty head") {
    MixedDegree1 r = mixed_degree1({}, 1.0);
    CHECK(r.tail == doctest::Approx(std::sqrt(kTwoOverPi)).epsilon(1e-12));
    CHECK(r.total == doctest::Approx(kTwoOverPi).epsilon(1e-12));
}

TEST_CASE("mixed degree-1 coefficients, dominant head") {
    MixedDegree1 r = mixed_degree1({10.0}, 1.0);
    CHECK(r.head[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.tail == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mixed degree-1 head coefficients match a quadrature oracle") {
    std::vector<double> head = {0.8, -0.5, 0.3};
    double sigma = 0.9;
    MixedDegree1 r = mixed_degree1(head, sigma);
    // oracle: f~(i) = E_{x_H}[x_i E_g[sign(head.x + sigma g)]] with the inner
    // expectation integrated numerically, split at the sign change
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < 8; ++b) {
            double a = 0.0;
            for (int j = 0; j < 3; ++j) a += ((b >> j) & 1) ? head[j] : -head[j];
            double cut = -a / sigma;
            double inner = gl_on(normal_pdf, cut, 9.0) - gl_on(normal_pdf, -9.0, cut);
            acc += (((b >> i) & 1) ? inner : -inner) / 8.0;
        }
        CHECK(r.head[i] == doctest::Approx(acc).epsilon(1e-10));
    }
}

TEST_CASE("collapsing the tail preserves the degree-1 weight") {
    // independent-Gaussian route vs single collapsed Gaussian
    std::mt19937_64 seeder(42);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 10; ++it) {
        int h = 1 + int(seeder() % 4);
        int t = 2 + int(seeder() % 5);
        std::vector<double> head(h), tail(t);
        for (double& v : head) v = 2.0 * nd(seeder);
        for (double& v : tail) v = 0.5 + std::fabs(nd(seeder));
        double tail_sq = 0.0;
        for (double v : tail) tail_sq += v * v;

        MixedDegree1Split split = mixed_degree1_split(head, tail);
        MixedDegree1 collapsed = mixed_degree1(head, std::sqrt(tail_sq));
        CHECK(std::fabs(split.total - collapsed.total) <= 1e-8);
        // tail mass matches coefficient-by-coefficient in the aggregate
        double split_tail = 0.0;
        for (double v : split.tails) split_tail += v * v;
        CHECK(std::fabs(split_tail - collapsed.tail * collapsed.tail) <= 1e-8);
    }
}

TEST_CASE("collapse agrees with Monte Carlo on the multi-Gaussian side") {
    std::vector<double> head = {1.2, 0.4};
    std::vector<double> tail = {0.6, 0.5, 0.3};
    double tail_sq = 0.0;
    for (double v : tail) tail_sq += v * v;
    MixedDegree1 collapsed = mixed_degree1(head, std::sqrt(tail_sq));

    Rng rng(777);
    const int kSamples = 400000;
    std::vector<double> acc(2 + 3, 0.0);
    for (int s = 0; s < kSamples; ++s) {
        double x0 = rng.next() & 1 ? 1.0 : -1.0;
        double x1 = rng.next() & 1 ? 1.0 : -1.0;
        double lin = head[0] * x0 + head[1] * x1;
        double g0 = rng.normal(), g1 = rng.normal(), g2 = rng.normal();
        double v = lin + tail[0] * g0 + tail[1] * g1 + tail[2] * g2;
        double f = v >= 0 ? 1.0 : -1.0;
        acc[0] += f * x0;
        acc[1] += f * x1;
        acc[2] += f * g0;
        acc[3] += f * g1;
        acc[4] += f * g2;
    }
    double w1 = 0.0;
    for (double& v : acc) {
        v /= kSamples;
        w1 += v * v;
    }
    // Monte Carlo error ~ 5/sqrt(N)
    CHECK(std::fabs(w1 - collapsed.total) <= 0.01);
}

TEST_CASE("regular LTFs have degree-1 weight near the Gaussian value") {
    // 0.05-regular, n = 20: |W1[f] - degree1_weight(E[f])| <= delta^{1/6} + 0.05
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ud(0.8, 1.2);
    int checked = 0;
    for (int it = 0; it < 50; ++it) {
        int n = 20;
        std::vector<double> w(n);
        for (double& v : w) v = ud(rng);
        WeightVector wv(w);
        if (!is_regular(wv, 0.3)) continue;
        double theta = 0.5 * ud(rng);
        Ltf f(w, theta);
        TruthTable t = to_truth_table(f);
        ChowParams c = chow_parameters(t);
        double delta = 0.0;
        for (double v : w) delta = std::max(delta, std::fabs(v));
        delta /= wv.norm;
        double bound = std::pow(delta, 1.0 / 6.0) + 0.05;
        CHECK(std::fabs(c.w1() - degree1_weight(c.mean())) <= bound);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("Boolean vs Gaussian mean for regular weights") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> ud(0.7, 1.3);
    for (int it = 0; it < 30; ++it) {
        int n = 18;
        std::vector<double> w(n);
        for (double& v : w) v = ud(rng);
        WeightVector wv(w);
        double tau = 0.0;
        for (double v : w) tau = std::max(tau, std::fabs(v));
        tau /= wv.norm;
        double theta = ud(rng);
        TruthTable t = to_truth_table(Ltf(w, theta));
        double boolean_mean = expectation(t);
        double gauss_mean = gauss_mean_sign(w, theta);
        CHECK(std::fabs(boolean_mean - gauss_mean) <= tau + 0.02);
    }
}
