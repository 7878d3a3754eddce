#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <filesystem>
#include <random>

#include "bfc/tomaszewski.hpp"

using namespace bfc;

namespace {

const std::string kDir = "tom_test_catalogs";
constexpr double kInvSqrt2 = 0.7071067811865476;

std::vector<double> random_unit(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    std::vector<double> w(n);
    double norm = 0.0;
    for (double& v : w) {
        v = nd(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : w) v /= norm;
    return w;
}

}  // namespace

TEST_CASE("tail probabilities, float mode") {
    // |x1| = 1 <= 1 everywhere, but the boundary makes float mode punt
    TailProb one = t_of_w(WeightVector({1.0}), 1.0);
    CHECK(one.verdict == Verdict::Indeterminate);

    TailProb ext = t_of_w(WeightVector({kInvSqrt2, kInvSqrt2}), 1.0);
    CHECK(ext.verdict == Verdict::No);
    CHECK(ext.in_prob == doctest::Approx(0.5));
    CHECK(ext.out_prob == doctest::Approx(0.5));

    TailProb pyth = t_of_w(WeightVector({0.6, 0.8}), 1.0);
    CHECK(pyth.verdict == Verdict::No);
    CHECK(pyth.in_prob == doctest::Approx(0.5));
}

TEST_CASE("tail probabilities, exact mode") {
    std::vector<Rational> one = {Rational(1)};
    ExactTailProb r1 = t_of_w_exact(one, Rational(1));
    CHECK(r1.in_prob == Rational(1));

    std::vector<Rational> pyth = {Rational(3, 5), Rational(4, 5)};
    ExactTailProb r2 = t_of_w_exact(pyth, Rational(1));
    CHECK(r2.in_prob == Rational(1, 2));
    CHECK(r2.out_prob == Rational(1, 2));

    // (1,1)/sqrt(2) through the normalized query: exactly 1/2
    std::vector<Rational> ext = {Rational(1), Rational(1)};
    ExactTailProb r3 = t_of_w_exact(ext, Rational(1), true);
    CHECK(r3.in_prob == Rational(1, 2));

    // boundary points count on both sides
    std::vector<Rational> dict = {Rational(1), Rational(0)};
    ExactTailProb r4 = t_of_w_exact(dict, Rational(1));
    CHECK(r4.in_prob == Rational(1));
    CHECK(r4.out_prob == Rational(1));

    // generalized radius, inclusive at the touching value 7/5
    ExactTailProb r5 = t_of_w_exact(pyth, Rational(7, 5));
    CHECK(r5.in_prob == Rational(1));
    CHECK(r5.out_prob == Rational(1, 2));
    ExactTailProb r6 = t_of_w_exact(pyth, Rational(1, 5));
    CHECK(r6.in_prob == Rational(1, 2));
    CHECK(r6.out_prob == Rational(1));
}

TEST_CASE("partition identity and float/exact agreement") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        int n = 2 + int(rng() % 12);
        WeightVector w(random_unit(rng, n));
        TailProb f = t_of_w(w, 1.0);
        CHECK(f.in_prob + f.out_prob >= 1.0 - 1e-15);
        if (f.verdict == Verdict::No) {
            CHECK(f.in_prob + f.out_prob == doctest::Approx(1.0));
            // exact mode on the dyadic rationals agrees
            std::vector<Rational> wq;
            for (double v : w.w) wq.push_back(rational_from_double(v));
            ExactTailProb e = t_of_w_exact(wq, Rational(1));
            CHECK(to_double(e.in_prob) == doctest::Approx(f.in_prob));
        }
    }
}

TEST_CASE("lower bound 3/8 on random vectors") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 5000; ++it) {
        int n = 2 + int(rng() % 19);
        TailProb f = t_of_w(WeightVector(random_unit(rng, n)), 1.0);
        CHECK(f.in_prob >= 0.375);
    }
    // beyond exact reach: Monte Carlo with 3 sigma slack
    WeightVector big(random_unit(rng, 40));
    double se = 0.0;
    TailProb mc = t_of_w_mc(big, 1.0, 200000, 7, &se);
    CHECK(mc.in_prob >= 0.375 - 3.0 * se);
}

TEST_CASE("min-norm oracle on the textbook sets") {
    // single point: nu = 1/sqrt(2), separable
    FeasibilityResult r1 = min_norm_feasibility({0b11}, 2);
    CHECK(r1.feasible);
    CHECK(r1.nu_sq == Rational(1, 2));
    CHECK(r1.separable);
    CHECK(r1.witness[0] == Rational(1, 2));
    CHECK(r1.witness[1] == Rational(1, 2));

    // antipodal pair: infeasible
    FeasibilityResult r2 = min_norm_feasibility({0b11, 0b00}, 2);
    CHECK(!r2.feasible);

    // {(1,1),(1,-1)}: nu = 1 exactly, not separable under the strict rule
    FeasibilityResult r3 = min_norm_feasibility({0b11, 0b01}, 2);
    CHECK(r3.feasible);
    CHECK(r3.nu_sq == Rational(1));
    CHECK(!r3.separable);
    CHECK(r3.witness[0] == Rational(1));
    CHECK(r3.witness[1] == Rational(0));

    // non-antipodal but infeasible: the even-parity quadruple in 3 dims
    FeasibilityResult r4 = min_norm_feasibility({0b111, 0b100, 0b010, 0b001}, 3);
    CHECK(!r4.feasible);
}

TEST_CASE("min-norm oracle agrees with a float active-set solve") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 120; ++it) {
        int m = 2 + int(rng() % 3);
        uint32_t size = uint32_t(1) << m;
        std::vector<uint32_t> pts;
        for (uint32_t b = 0; b < size; ++b) {
            if (rng() % 3 == 0) pts.push_back(b);
        }
        if (pts.empty()) continue;
        FeasibilityResult ex = min_norm_feasibility(pts, m);

        // float replica of the same exhaustive KKT search
        bool found = false;
        double best = 1e300;
        int np = int(pts.size());
        std::vector<int> idx;
        std::function<void(int, int)> rec = [&](int start, int rem) {
            if (!idx.empty()) {
                int k = int(idx.size());
                std::vector<std::vector<double>> g(k, std::vector<double>(k));
                for (int i = 0; i < k; ++i) {
                    for (int j = 0; j < k; ++j) {
                        g[i][j] = m - 2 * std::popcount((pts[idx[i]] ^ pts[idx[j]]) & (size - 1));
                    }
                }
                // Gaussian elimination
                std::vector<double> lam(k, 1.0);
                bool singular = false;
                for (int c = 0; c < k && !singular; ++c) {
                    int p = c;
                    for (int r2 = c + 1; r2 < k; ++r2) {
                        if (std::fabs(g[r2][c]) > std::fabs(g[p][c])) p = r2;
                    }
                    if (std::fabs(g[p][c]) < 1e-9) {
                        singular = true;
                        break;
                    }
                    std::swap(g[p], g[c]);
                    std::swap(lam[p], lam[c]);
                    for (int r2 = 0; r2 < k; ++r2) {
                        if (r2 == c) continue;
                        double f = g[r2][c] / g[c][c];
                        for (int cc = c; cc < k; ++cc) g[r2][cc] -= f * g[c][cc];
                        lam[r2] -= f * lam[c];
                    }
                }
                if (!singular) {
                    double nu = 0.0;
                    bool ok = true;
                    for (int i = 0; i < k; ++i) {
                        lam[i] /= g[i][i];
                        if (lam[i] < -1e-9) ok = false;
                        nu += lam[i];
                    }
                    if (ok) {
                        std::vector<double> w(m, 0.0);
                        for (int i = 0; i < k; ++i) {
                            for (int c = 0; c < m; ++c) {
                                w[c] += ((pts[idx[i]] >> c) & 1) ? lam[i] : -lam[i];
                            }
                        }
                        for (uint32_t p : pts) {
                            double s = 0.0;
                            for (int c = 0; c < m; ++c) s += ((p >> c) & 1) ? w[c] : -w[c];
                            if (s < 1.0 - 1e-9) ok = false;
                        }
                        if (ok && nu < best) {
                            best = nu;
                            found = true;
                        }
                    }
                }
            }
            if (rem == 0) return;
            for (int i = start; i < np; ++i) {
                idx.push_back(i);
                rec(i + 1, rem - 1);
                idx.pop_back();
            }
        };
        rec(0, m);

        CHECK(found == ex.feasible);
        if (found) {
            CHECK(best == doctest::Approx(to_double(ex.nu_sq)).epsilon(1e-9));
            CHECK((best < 1.0 - 1e-9) == ex.separable);
        }
    }
}

TEST_CASE("sphere infimum at m = 2 and 3") {
    TomReport r2 = t_sphere(2, kDir);
    CHECK(r2.value == Rational(1, 2));
    CHECK(r2.p_size == 1);
    CHECK(r2.s_size == 2);
    // witness has margin > 1 on the winning set
    CHECK(std::fabs(std::fabs(r2.witness[0]) - kInvSqrt2) < 0.2);

    TomReport r3 = t_sphere(3, kDir);
    CHECK(r3.value >= Rational(3, 8));
    CHECK(r3.value <= Rational(1, 2));
    CHECK(tom_report_json(r3) == tom_report_json(t_sphere(3, kDir)));
}

TEST_CASE("sphere infimum is nonincreasing in m") {
    Rational prev = 1;
    for (int m = 2; m <= 4; ++m) {
        TomReport r = t_sphere(m, kDir);
        CHECK(r.value <= prev);
        prev = r.value;
    }
}

TEST_CASE("sphere value lower-bounds the tail probability of every vector") {
    std::mt19937_64 rng(13);
    for (int m = 2; m <= 3; ++m) {
        double inf_val = to_double(t_sphere(m, kDir).value);
        for (int it = 0; it < 10000; ++it) {
            TailProb f = t_of_w(WeightVector(random_unit(rng, m)), 1.0);
            CHECK(f.in_prob >= inf_val - 1e-12);
        }
    }
}

TEST_CASE("dimension reduction, identity regime") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 50; ++it) {
        WeightVector w(random_unit(rng, 20));
        ReduceTResult r = reduce_dimension_t(w, 0.25);
        CHECK(!r.small_branch);
        // desk scale: K is astronomically larger than n, the proper form
        // passes through unchanged
        REQUIRE(r.v.dim() == 20);
        ExactTailProb tw, tv;
        std::vector<Rational> wq, vq;
        for (double v : make_proper(w).proper.w) wq.push_back(rational_from_double(v));
        for (double v : r.v.w) vq.push_back(rational_from_double(v));
        tw = t_of_w_exact(wq, Rational(1));
        tv = t_of_w_exact(vq, Rational(1));
        Rational diff = tv.in_prob - tw.in_prob;
        CHECK(abs(diff) <= Rational(1, 4));
        CHECK(diff == 0);  // identity in this regime
    }
}

TEST_CASE("dimension reduction, equal-coordinate tail branch") {
    // eta = 0.5 makes a flat 20-dim vector immediately regular
    std::vector<double> w(20, 1.0 / std::sqrt(20.0));
    ReduceTResult r = reduce_dimension_t(WeightVector(w), 32.0);
    CHECK(r.small_branch);
    REQUIRE(r.critical.has_value());
    CHECK(*r.critical == 1);
    CHECK(r.v.dim() == 16);  // ceil(4/eta^2) equal coordinates
    for (double v : r.v.w) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));

    // both tail probabilities exactly, difference within 8*eta (and well less)
    ExactTailProb tw = t_of_w_exact(std::vector<Rational>(20, Rational(1)), Rational(1), true);
    ExactTailProb tv = t_of_w_exact(std::vector<Rational>(16, Rational(1, 4)), Rational(1));
    // binomial-count oracles: |sum of 20 signs| <= sqrt(20) means 8..12 ones,
    // |sum of 16 signs| <= 4 means 6..10 ones
    CHECK(tw.in_prob == Rational(772616) / Rational(1048576));
    CHECK(tv.in_prob == Rational(51766) / Rational(65536));
    double diff = std::fabs(to_double(tv.in_prob) - to_double(tw.in_prob));
    CHECK(diff <= 8.0 * r.eta);
    CHECK(diff < 0.06);
}

TEST_CASE("dimension reduction keeps the head in the large branch") {
    std::vector<double> w = {0.99, 0.1410673598};  // unit up to 1e-10
    double norm = std::sqrt(w[0] * w[0] + w[1] * w[1]);
    w[0] /= norm;
    w[1] /= norm;
    ReduceTResult r = reduce_dimension_t(WeightVector(w), 0.25);
    CHECK(!r.small_branch);
    CHECK(r.v.dim() == 2);
    CHECK(r.v.w[0] == doctest::Approx(w[0]));
}

TEST_CASE("tail anti-concentration for a large-critical-index vector") {
    // geometric weights: the critical index is infinite for tau <= 0.65,
    // and the mass near any point at the tail scale stays below 4 * 2^-t
    int n = 24;
    std::vector<double> w(n);
    w[0] = 1.0;
    for (int i = 1; i < n; ++i) w[i] = w[i - 1] * 0.7;
    WeightVector wv(w);
    for (double& v : w) v /= wv.norm;
    WeightVector unit(w);
    auto ci = critical_index(unit, 0.65);
    CHECK(!ci.index.has_value());

    for (int k : {8, 12}) {
        double sigma_k = ci.sigma[k];
        for (double t : {2.0, 3.0, 4.0}) {
            for (double center : {0.0, 0.3, 1.0}) {
                double radius = std::sqrt(t) * sigma_k;
                uint64_t cnt = 0;
                double s = 0.0;
                for (double v : w) s -= v;
                std::size_t g = 0;
                for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
                    if (idx) {
                        int i = std::countr_zero(idx);
                        std::size_t bit = std::size_t{1} << i;
                        g ^= bit;
                        s += (g & bit) ? 2.0 * w[i] : -2.0 * w[i];
                    }
                    cnt += std::fabs(s - center) <= radius;
                }
                double pr = double(cnt) / double(std::size_t{1} << n);
                CHECK(pr <= 4.0 * std::pow(2.0, -t));
            }
        }
    }
}

TEST_CASE("head-sharing vectors with regular tails have close tail CDFs") {
    std::vector<double> head = {0.6, 0.45};
    double head_sq = 0.36 + 0.2025;
    auto build = [&](int tail_len) {
        std::vector<double> v = head;
        double coord = std::sqrt((1.0 - head_sq) / tail_len);
        for (int i = 0; i < tail_len; ++i) v.push_back(coord);
        return v;
    };
    std::vector<double> wa = build(14), ub = build(19);
    double eta = 1.0 / std::sqrt(14.0);  // regularity of the shorter tail
    for (double theta : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        auto cdf = [&](const std::vector<double>& v) {
            int nn = int(v.size());
            uint64_t cnt = 0;
            double s = 0.0;
            for (double x : v) s -= x;
            std::size_t g = 0;
            for (std::size_t k = 0; k < (std::size_t{1} << nn); ++k) {
                if (k) {
                    int i = std::countr_zero(k);
                    std::size_t bit = std::size_t{1} << i;
                    g ^= bit;
                    s += (g & bit) ? 2.0 * v[i] : -2.0 * v[i];
                }
                cnt += s <= theta;
            }
            return double(cnt) / double(std::size_t{1} << nn);
        };
        CHECK(std::fabs(cdf(wa) - cdf(ub)) <= 4.0 * eta);
    }
}

TEST_CASE("cleanup") { std::filesystem::remove_all(kDir); }
