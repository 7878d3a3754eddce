#include "bfc/khintchine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "bfc/common.hpp"
#include "bfc/gaussian.hpp"
#include "bfc/hypercube.hpp"
#include "json.hpp"

namespace bfc {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
const double kSqrt2OverPi = std::sqrt(2.0 / 3.141592653589793);
}  // namespace

double khintchine_constant(const WeightVector& w) {
    int n = w.dim();
    require_dim(n);
    double s = 0.0;
    for (double v : w.w) s -= v;
    double acc = std::fabs(s);
    std::size_t g = 0;
    for (std::size_t k = 1; k < table_size(n); ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        s += (g & bit) ? 2.0 * w.w[i] : -2.0 * w.w[i];
        acc += std::fabs(s);
    }
    return acc / double(table_size(n));
}

double khintchine_constant_mc(const WeightVector& w, uint64_t samples, uint64_t seed,
                              double* std_err) {
    Rng rng(seed);
    int n = w.dim();
    double acc = 0.0, acc2 = 0.0;
    for (uint64_t it = 0; it < samples; ++it) {
        double s = 0.0;
        int i = 0;
        while (i < n) {
            uint64_t r = rng.next();
            for (int b = 0; b < 64 && i < n; ++b, ++i) {
                s += ((r >> b) & 1) ? w.w[i] : -w.w[i];
            }
        }
        double v = std::fabs(s);
        acc += v;
        acc2 += v * v;
    }
    double mean = acc / double(samples);
    if (std_err) {
        double var = std::max(0.0, acc2 / double(samples) - mean * mean);
        *std_err = std::sqrt(var / double(samples));
    }
    return mean;
}

Rational khintchine_exact(const std::vector<Rational>& w) {
    int n = int(w.size());
    require_dim(n);
    Rational s = 0;
    for (const auto& v : w) s -= v;
    Rational acc = abs(s);
    std::size_t g = 0;
    for (std::size_t k = 1; k < table_size(n); ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        if (g & bit) {
            s += 2 * w[i];
        } else {
            s -= 2 * w[i];
        }
        acc += abs(s);
    }
    return acc / Rational(int64_t(table_size(n)));
}

double dist_to_extremal(const WeightVector& unit_w) {
    int n = unit_w.dim();
    if (n < 2) throw std::invalid_argument("needs at least two coordinates");
    // ||w - (±e_i ± e_j)/sqrt(2)||^2 = ||w||^2 + 1 - sqrt(2)(±w_i ± w_j);
    // every sign/index choice is evaluated.
    double norm_sq = 0.0;
    for (double v : unit_w.w) norm_sq += v * v;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int si = -1; si <= 1; si += 2) {
                for (int sj = -1; sj <= 1; sj += 2) {
                    double cross = si * unit_w.w[i] + sj * unit_w.w[j];
                    double d2 = norm_sq + 1.0 - std::sqrt(2.0) * cross;
                    best = std::min(best, d2);
                }
            }
        }
    }
    return std::sqrt(std::max(0.0, best));
}

EllMoments ell_moments(const WeightVector& w) {
    int n = w.dim();
    require_dim(n, 24);
    RealTable ell(n);
    double s = 0.0;
    for (double v : w.w) s -= v;
    ell.values[0] = std::fabs(s);
    std::size_t g = 0;
    for (std::size_t k = 1; k < ell.values.size(); ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        s += (g & bit) ? 2.0 * w.w[i] : -2.0 * w.w[i];
        ell.values[g] = std::fabs(s);
    }
    FourierSpectrum spec = wht(ell);
    EllMoments m;
    m.mean = spec.coeffs[0];
    m.var = variance(spec);
    m.influences.resize(n);
    for (int i = 0; i < n; ++i) m.influences[i] = influence(ell, i);
    m.weight_ge4 = n >= 4 ? degree_weight(spec, 4, LevelMode::AtLeast) : 0.0;
    return m;
}

namespace {

struct Sample {
    std::vector<double> w;     // proper unit vector
    bool exact_grid = false;   // integer direction, exact recheck possible
    std::vector<int64_t> grid; // integer direction when exact_grid
};

void emit_grid(int n, int denom, std::vector<Sample>& out) {
    // Primitive integer directions a_1 >= ... >= a_n >= 0, entries <= denom.
    std::vector<int64_t> a(n, 0);
    auto rec = [&](auto&& self, int pos, int64_t cap) -> void {
        if (pos == n) {
            int64_t g = 0;
            for (int64_t v : a) g = std::gcd(g, v);
            if (g != 1) return;  // zero or non-primitive
            Sample s;
            s.exact_grid = true;
            s.grid = a;
            double norm = 0.0;
            for (int64_t v : a) norm += double(v) * double(v);
            norm = std::sqrt(norm);
            s.w.resize(n);
            for (int i = 0; i < n; ++i) s.w[i] = double(a[i]) / norm;
            out.push_back(std::move(s));
            return;
        }
        for (int64_t v = cap; v >= 0; --v) {
            a[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, denom);
}

std::vector<double> proper_unit_from_rng(int n, Rng& rng) {
    std::vector<double> w(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = std::fabs(rng.normal());
        norm += w[i] * w[i];
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
        w.assign(n, 0.0);
        w[0] = 1.0;
        return w;
    }
    for (double& v : w) v /= norm;
    std::sort(w.begin(), w.end(), std::greater<double>());
    return w;
}

std::vector<double> perturbed_extremal(int n, double radius, Rng& rng) {
    std::vector<double> w(n, 0.0);
    w[0] = w[1] = kInvSqrt2;
    for (int i = 0; i < n; ++i) w[i] += radius * rng.normal();
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : w) v = std::fabs(v / norm);
    std::sort(w.begin(), w.end(), std::greater<double>());
    return w;
}

// Exact check that K(w) - ||w||/sqrt(2) > 0, squared on both sides.
bool exact_ratio_positive(const std::vector<Rational>& w) {
    Rational mean = khintchine_exact(w);
    Rational lhs = 2 * mean * mean;  // 2 K^2 vs ||w||^2
    return lhs > norm_sq(w);
}

}  // namespace

RobustScanReport robust_scan(const RobustScanConfig& cfg, const CsvRow& csv) {
    if (!(cfg.d_min > 0.0)) throw std::invalid_argument("d_min must be positive");
    RobustScanReport rep;
    rep.config = cfg;

    std::vector<Sample> samples;
    for (int n = std::max(2, cfg.n_min); n <= cfg.n_max; ++n) {
        if (cfg.grid && n <= 5) emit_grid(n, cfg.grid_denom, samples);
        if (cfg.random) {
            for (uint64_t i = 0; i < cfg.samples; ++i) {
                Rng rng(mix_seed(cfg.seed, (uint64_t(n) << 40) | i));
                Sample s;
                s.w = proper_unit_from_rng(n, rng);
                samples.push_back(std::move(s));
            }
        }
        if (cfg.perturb && n >= 2) {
            static const double kRadii[] = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
            uint64_t per_radius = std::max<uint64_t>(1, cfg.samples / 6);
            for (int r = 0; r < 6; ++r) {
                for (uint64_t i = 0; i < per_radius; ++i) {
                    Rng rng(mix_seed(cfg.seed ^ 0x9e3779b9ULL,
                                     (uint64_t(n) << 40) | (uint64_t(r) << 32) | i));
                    Sample s;
                    s.w = perturbed_extremal(n, kRadii[r], rng);
                    samples.push_back(std::move(s));
                }
            }
        }
    }

    struct Row {
        double k = 0.0, d = 0.0, ratio = 0.0;
        bool has_ratio = false;
        bool koenig_bad = false, kk_bad = false, suspicious = false;
    };
    std::vector<Row> rows(samples.size());

    parallel_for(samples.size(), cfg.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Sample& s = samples[idx];
            WeightVector wv(s.w);
            Row& row = rows[idx];
            row.k = khintchine_constant(wv);
            row.d = dist_to_extremal(wv);
            row.kk_bad = row.k < kInvSqrt2 - 1e-12;
            double koenig = kSqrt2OverPi - (1.0 - kSqrt2OverPi) * s.w[0];
            row.koenig_bad = row.k < koenig - 1e-12;
            if (row.d >= rep.config.d_min) {
                row.has_ratio = true;
                row.ratio = (row.k - kInvSqrt2) / row.d;
                if (row.ratio < 1e-6) {
                    // Rational arithmetic settles the sign: grid samples are
                    // already rational, float samples are dyadic rationals.
                    row.suspicious = true;
                    std::vector<Rational> wq;
                    if (s.exact_grid) {
                        for (int64_t v : s.grid) wq.emplace_back(long(v));
                    } else {
                        for (double v : s.w) wq.push_back(rational_from_double(v));
                    }
                    if (!exact_ratio_positive(wq)) row.kk_bad = true;
                }
            }
        }
    });

    rep.samples_total = samples.size();
    rep.min_k = std::numeric_limits<double>::infinity();
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const Row& row = rows[idx];
        rep.min_k = std::min(rep.min_k, row.k);
        rep.khintchine_violations += row.kk_bad;
        rep.koenig_violations += row.koenig_bad;
        rep.suspicious_rechecked += row.suspicious;
        if (row.has_ratio) {
            ++rep.ratios_counted;
            if (row.ratio < rep.min_ratio) {
                rep.min_ratio = row.ratio;
                rep.argmin = samples[idx].w;
            }
        }
        if (csv) {
            std::ostringstream line;
            line << '"';
            char buf[48];
            for (std::size_t i = 0; i < samples[idx].w.size(); ++i) {
                if (i) line << ' ';
                std::snprintf(buf, sizeof buf, "%.17g", samples[idx].w[i]);
                line << buf;
            }
            line << "\",";
            std::snprintf(buf, sizeof buf, "%.17g", row.k);
            line << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", row.d);
            line << buf << ',';
            if (row.has_ratio) {
                std::snprintf(buf, sizeof buf, "%.17g", row.ratio);
                line << buf;
            }
            csv(line.str());
        }
    }
    if (rep.ratios_counted == 0) rep.min_ratio = 0.0;
    return rep;
}

std::string robust_report_json(const RobustScanReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "bfc.robust-scan.v1";
    j["n_min"] = r.config.n_min;
    j["n_max"] = r.config.n_max;
    j["d_min"] = r.config.d_min;
    j["seed"] = r.config.seed;
    j["samples_total"] = r.samples_total;
    j["ratios_counted"] = r.ratios_counted;
    j["min_k"] = r.min_k;
    j["min_ratio"] = r.min_ratio;
    j["argmin"] = r.argmin;
    j["khintchine_violations"] = r.khintchine_violations;
    j["koenig_violations"] = r.koenig_violations;
    j["suspicious_rechecked"] = r.suspicious_rechecked;
    return j.dump(2);
}

}  // namespace bfc
