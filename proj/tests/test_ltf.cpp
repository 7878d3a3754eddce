#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bfc/hypercube.hpp"
#include "bfc/khintchine.hpp"
#include "bfc/ltf.hpp"

using namespace bfc;

TEST_CASE("evaluation and tie convention") {
    TruthTable t = to_truth_table(Ltf({1.0}, 0.0));
    CHECK(t.value(0) == -1);
    CHECK(t.value(1) == 1);

    TruthTable maj = to_truth_table(Ltf({1.0, 1.0, 1.0}, 0.0));
    CHECK(maj.value(0b111) == 1);
    CHECK(maj.value(0b011) == 1);
    CHECK(maj.value(0b100) == -1);

    // 2*(-1) + 1 + 1 = 0 and sign(0) = +1
    TruthTable tie = to_truth_table(Ltf({2.0, 1.0, 1.0}, 0.0));
    CHECK(tie.value(0b110) == 1);

    std::vector<Rational> w = {Rational(2), Rational(1), Rational(1)};
    TruthTable exact = to_truth_table_exact(w, Rational(0));
    CHECK(exact == tie);
}

TEST_CASE("make_proper") {
    WeightVector w({-0.6, 0.8});
    ProperForm p = make_proper(w);
    CHECK(p.proper.w[0] == doctest::Approx(0.8));
    CHECK(p.proper.w[1] == doctest::Approx(0.6));
    CHECK(p.perm[0] == 1);
    CHECK(p.perm[1] == 0);
    CHECK(p.signs[0] == 1);
    CHECK(p.signs[1] == -1);
    // reconstruction
    for (int i = 0; i < 2; ++i) {
        CHECK(w.w[p.perm[i]] == doctest::Approx(p.signs[i] * p.proper.w[i]));
    }

    WeightVector already({3.0, 2.0, 1.0});
    ProperForm q = make_proper(already);
    CHECK(q.perm == std::vector<int>({0, 1, 2}));
    CHECK(q.signs == std::vector<int>({1, 1, 1}));

    WeightVector z({0.0, 0.0, 1.0});
    CHECK(make_proper(z).proper.w == std::vector<double>({1.0, 0.0, 0.0}));
}

TEST_CASE("make_proper preserves K, T-style counts and W1") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 50; ++it) {
        int n = 2 + int(rng() % 8);
        std::vector<double> w(n);
        for (double& v : w) v = nd(rng);
        WeightVector wv(w);
        ProperForm p = make_proper(wv);
        CHECK(khintchine_constant(wv) ==
              doctest::Approx(khintchine_constant(p.proper)).epsilon(1e-12));
        // W1 of the induced zero-threshold LTF is permutation/sign invariant
        FourierSpectrum a = wht(to_truth_table(Ltf(wv.w, 0.0)));
        FourierSpectrum b = wht(to_truth_table(Ltf(p.proper.w, 0.0)));
        CHECK(degree_weight(a, 1) == doctest::Approx(degree_weight(b, 1)).epsilon(1e-12));
    }
}

TEST_CASE("degeneracy detection") {
    auto r1 = is_degenerate(Ltf({1.0, 1.0}, 0.0));
    CHECK(r1.verdict == Verdict::Yes);

    std::vector<Rational> w321 = {Rational(3), Rational(2), Rational(1)};
    auto r2 = is_degenerate_exact(w321, Rational(0));
    CHECK(r2.verdict == Verdict::Yes);
    // witness satisfies w.x = 0: 3 - 2 - 1
    CHECK(dot(w321, r2.witness, 3) == 0);

    std::vector<Rational> w421 = {Rational(4), Rational(2), Rational(1)};
    CHECK(is_degenerate_exact(w421, Rational(0)).verdict == Verdict::No);
    CHECK(is_degenerate(Ltf({4.0, 2.0, 1.0}, 0.0)).verdict == Verdict::No);

    // borderline in float mode
    auto r3 = is_degenerate(Ltf({1.0, 1.0 + 1e-13}, 0.0));
    CHECK(r3.verdict == Verdict::Indeterminate);
}

TEST_CASE("critical index") {
    // any unit vector is 1-regular at index 1
    WeightVector u = make_proper(WeightVector({0.5, 0.5, 0.5, 0.5})).proper;
    auto r = critical_index(u, 1.0);
    REQUIRE(r.index.has_value());
    CHECK(*r.index == 1);

    auto inf = critical_index(WeightVector({0.8, 0.6}), 0.5);
    CHECK(!inf.index.has_value());

    double s = std::sqrt(22.0);
    auto one = critical_index(WeightVector({4 / s, 2 / s, 1 / s, 1 / s}), 0.9);
    REQUIRE(one.index.has_value());
    CHECK(*one.index == 1);

    // sigma array is the suffix norm
    CHECK(one.sigma[0] == doctest::Approx(1.0));
    CHECK(one.sigma[3] == doctest::Approx(1 / s));
    CHECK(one.sigma[4] == 0.0);

    // trailing zeros are skipped
    auto z = critical_index(WeightVector({1.0, 0.0, 0.0}), 0.5);
    CHECK(!z.index.has_value());
    auto z2 = critical_index(WeightVector({1.0, 0.0, 0.0}), 1.0);
    REQUIRE(z2.index.has_value());
    CHECK(*z2.index == 1);
}

TEST_CASE("regularity") {
    int n = 16;
    std::vector<double> flat(n, 1.0 / std::sqrt(double(n)));
    CHECK(is_regular(WeightVector(flat), 1.0 / std::sqrt(double(n)) + 1e-12));
    CHECK(!is_regular(WeightVector({1.0, 0.0, 0.0}), 0.5));

    // critical index 1 iff tau-regular
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 100; ++it) {
        int d = 2 + int(rng() % 8);
        std::vector<double> w(d);
        for (double& v : w) v = nd(rng);
        WeightVector p = make_proper(WeightVector(w)).proper;
        double tau = 0.2 + 0.8 * double(rng() % 100) / 100.0;
        auto ci = critical_index(p, tau);
        bool reg = is_regular(p, tau);
        CHECK((ci.index && *ci.index == 1) == reg);
    }
}

TEST_CASE("tail norm decays before the critical index") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    for (double tau : {0.1, 0.3}) {
        for (int it = 0; it < 200; ++it) {
            int n = 3 + int(rng() % 10);
            std::vector<double> w(n);
            for (double& v : w) v = nd(rng);
            WeightVector p = make_proper(WeightVector(w)).proper;
            if (p.w[n - 1] == 0.0) continue;
            auto ci = critical_index(p, tau);
            int c = ci.index ? *ci.index : n;
            for (int a = 1; a <= c; ++a) {
                double bound = std::pow(1.0 - tau * tau, (a - 1) / 2.0) * ci.sigma[0];
                CHECK(ci.sigma[a - 1] < bound + 1e-12);
            }
        }
    }
}

TEST_CASE("Chow parameters") {
    ChowParams maj = chow_parameters(Ltf({1.0, 1.0, 1.0}, 0.0));
    CHECK(maj.mean() == doctest::Approx(0.0));
    for (int i = 0; i < 3; ++i) CHECK(maj.coord(i) == doctest::Approx(0.5));

    ChowParams dict = chow_parameters(Ltf({1.0, 0.0, 0.0}, 0.0));
    CHECK(dict.coord(0) == doctest::Approx(1.0));
    CHECK(dict.coord(1) == doctest::Approx(0.0));

    ChowParams andf = chow_parameters(Ltf({1.0, 1.0}, 1.5));
    CHECK(andf.mean() == doctest::Approx(-0.5));
    CHECK(andf.coord(0) == doctest::Approx(0.5));
    CHECK(andf.coord(1) == doctest::Approx(0.5));

    // integer numerators match the spectrum
    std::mt19937_64 rng(13);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 30; ++it) {
        int n = 2 + int(rng() % 9);
        std::vector<double> w(n);
        for (double& v : w) v = nd(rng);
        Ltf f(w, 0.3 * nd(rng));
        TruthTable t = to_truth_table(f);
        ChowParams c = chow_parameters(t);
        FourierSpectrum s = wht(t);
        CHECK(c.mean() == doctest::Approx(s.coeffs[0]).epsilon(1e-12));
        for (int i = 0; i < n; ++i) {
            CHECK(c.coord(i) == doctest::Approx(s.coeffs[std::size_t{1} << i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("ordering of influences and Chow signs on proper LTFs") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 100; ++it) {
        int n = 2 + int(rng() % 8);
        std::vector<double> w(n);
        for (double& v : w) v = nd(rng);
        WeightVector p = make_proper(WeightVector(w)).proper;
        Ltf f(p.w, 0.2 * nd(rng));
        TruthTable t = to_truth_table(f);
        ChowParams c = chow_parameters(t);
        double inf1 = influence(t, 0);
        for (int i = 0; i < n; ++i) {
            CHECK(inf1 >= influence(t, i) - 1e-12);
            CHECK(p.w[i] * c.coord(i) >= -1e-12);
        }
    }
}

TEST_CASE("balanced lift") {
    // AND: W^{<=1} = 3/4 carried to W^1 of the lift
    Ltf andf({1.0, 1.0}, 1.5);
    Ltf lift = balanced_lift(andf);
    CHECK(lift.theta == 0.0);
    CHECK(lift.dim() == 3);
    FourierSpectrum sa = wht(to_truth_table(andf));
    FourierSpectrum sl = wht(to_truth_table(lift));
    double wle1 = degree_weight(sa, 1, LevelMode::AtMost);
    CHECK(wle1 == doctest::Approx(0.75));
    CHECK(degree_weight(sl, 1) == doctest::Approx(wle1).epsilon(1e-12));
    // the new coordinate's coefficient is E[f]
    CHECK(sl.coeffs[std::size_t{1} << 2] == doctest::Approx(sa.coeffs[0]).epsilon(1e-12));

    // Maj3 lift: 4-variable balanced LTF with W^1 = 3/4
    Ltf maj({1.0, 1.0, 1.0}, 0.0);
    Ltf mlift = balanced_lift(maj);
    FourierSpectrum sm = wht(to_truth_table(mlift));
    CHECK(degree_weight(sm, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(expectation(to_truth_table(mlift)) == doctest::Approx(0.0));

    CHECK_THROWS_AS(balanced_lift(Ltf({1.0, 1.0}, 0.0)), std::invalid_argument);

    std::mt19937_64 rng(23);
    std::normal_distribution<double> nd;
    for (int it = 0; it < 50; ++it) {
        int n = 2 + int(rng() % 7);
        std::vector<double> w(n);
        for (double& v : w) v = nd(rng);
        Ltf f(w, 0.4 * nd(rng));
        if (is_degenerate(f).verdict != Verdict::No) continue;
        Ltf g = balanced_lift(f);
        CHECK(is_degenerate(g).verdict == Verdict::No);
        FourierSpectrum sf = wht(to_truth_table(f));
        FourierSpectrum sg = wht(to_truth_table(g));
        CHECK(degree_weight(sf, 1, LevelMode::AtMost) ==
              doctest::Approx(degree_weight(sg, 1)).epsilon(1e-11));
        CHECK(degree_weight(sg, 1, LevelMode::AtMost) ==
              doctest::Approx(degree_weight(sg, 1)).epsilon(1e-11));
    }
}

TEST_CASE("text form") {
    auto f = parse_ltf("3/5,4/5 ; 0");
    REQUIRE(f.has_value());
    CHECK(f->weights.w[0] == doctest::Approx(0.6));
    CHECK(f->weights.w[1] == doctest::Approx(0.8));
    CHECK(f->theta == 0.0);

    std::vector<Rational> w;
    Rational theta;
    REQUIRE(parse_ltf_exact("1/2, -2/3 ; 1/7", w, theta));
    CHECK(w[0] == Rational(1, 2));
    CHECK(w[1] == Rational(-2, 3));
    CHECK(theta == Rational(1, 7));

    CHECK(!parse_ltf("1,,2 ; 0").has_value());
    CHECK(!parse_ltf("").has_value());

    Ltf g({0.25, -1.5}, 0.5);
    auto round = parse_ltf(format_ltf(g));
    REQUIRE(round.has_value());
    CHECK(round->weights.w == g.weights.w);
    CHECK(round->theta == g.theta);
}
