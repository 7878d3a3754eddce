#include "bfc/ltf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bfc {

WeightVector::WeightVector(std::vector<double> weights) : w(std::move(weights)) {
    norm = recompute_norm();
}

double WeightVector::recompute_norm() const {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
}

int Ltf::eval(uint32_t point_mask) const {
    double s = -theta;
    for (int i = 0; i < dim(); ++i) {
        s += ((point_mask >> i) & 1) ? weights.w[i] : -weights.w[i];
    }
    return s >= 0.0 ? 1 : -1;
}

TruthTable to_truth_table(const Ltf& f) {
    int n = f.dim();
    require_dim(n);
    TruthTable t(n);
    // Gray-code walk: one weight update per point.
    double s = -f.theta;
    for (double v : f.weights.w) s -= v;
    std::size_t size = t.size();
    std::size_t g = 0;
    t.set(0, s >= 0.0 ? 1 : -1);
    for (std::size_t k = 1; k < size; ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        s += (g & bit) ? 2.0 * f.weights.w[i] : -2.0 * f.weights.w[i];
        t.set(g, s >= 0.0 ? 1 : -1);
    }
    return t;
}

TruthTable to_truth_table_exact(const std::vector<Rational>& w, const Rational& theta) {
    int n = int(w.size());
    require_dim(n);
    TruthTable t(n);
    Rational s = -theta;
    for (const auto& v : w) s -= v;
    std::size_t size = t.size();
    std::size_t g = 0;
    t.set(0, sgn(s) >= 0 ? 1 : -1);
    for (std::size_t k = 1; k < size; ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        if (g & bit) {
            s += 2 * w[i];
        } else {
            s -= 2 * w[i];
        }
        t.set(g, sgn(s) >= 0 ? 1 : -1);
    }
    return t;
}

ProperForm make_proper(const WeightVector& w) {
    int n = w.dim();
    ProperForm out;
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), 0);
    std::stable_sort(out.perm.begin(), out.perm.end(), [&](int a, int b) {
        return std::fabs(w.w[a]) > std::fabs(w.w[b]);
    });
    std::vector<double> sorted(n);
    out.signs.resize(n);
    for (int i = 0; i < n; ++i) {
        double v = w.w[out.perm[i]];
        sorted[i] = std::fabs(v);
        out.signs[i] = v < 0.0 ? -1 : 1;
    }
    out.proper = WeightVector(std::move(sorted));
    return out;
}

std::vector<Rational> make_proper_exact(const std::vector<Rational>& w) {
    std::vector<Rational> out;
    out.reserve(w.size());
    for (const auto& q : w) out.push_back(abs(q));
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a > b; });
    return out;
}

DegeneracyResult is_degenerate(const Ltf& f) {
    int n = f.dim();
    require_dim(n);
    double s = -f.theta;
    for (double v : f.weights.w) s -= v;
    double best = std::fabs(s);
    uint32_t best_point = 0;
    std::size_t g = 0;
    for (std::size_t k = 1; k < table_size(n); ++k) {
        int i = std::countr_zero(k);
        std::size_t bit = std::size_t{1} << i;
        g ^= bit;
        s += (g & bit) ? 2.0 * f.weights.w[i] : -2.0 * f.weights.w[i];
        if (std::fabs(s) < best) {
            best = std::fabs(s);
            best_point = uint32_t(g);
        }
    }
    DegeneracyResult r;
    double scale = std::max(f.weights.norm, 1e-300);
    if (best == 0.0) {
        r.verdict = Verdict::Yes;
        r.witness = best_point;
    } else if (best < 1e-9 * scale) {
        r.verdict = Verdict::Indeterminate;  // exact mode needed for a verdict
        r.witness = best_point;
    }
    return r;
}

DegeneracyResult is_degenerate_exact(const std::vector<Rational>& w, const Rational& theta) {
    int n = int(w.size());
    require_dim(n);
    Rational s = -theta;
    for (const auto& v : w) s -= v;
    DegeneracyResult r;
    if (s == 0) {
        r.verdict = Verdict::Yes;
        return r;
    }
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
        if (s == 0) {
            r.verdict = Verdict::Yes;
            r.witness = uint32_t(g);
            return r;
        }
    }
    return r;
}

CriticalIndexResult critical_index(const WeightVector& proper_w, double tau) {
    if (tau <= 0.0) throw std::invalid_argument("tau must be positive");
    int n = proper_w.dim();
    for (int i = 0; i + 1 < n; ++i) {
        if (proper_w.w[i] < proper_w.w[i + 1] || proper_w.w[i + 1] < 0.0) {
            throw std::invalid_argument("critical_index requires a proper vector");
        }
    }
    CriticalIndexResult r;
    r.sigma.assign(n + 1, 0.0);
    double acc = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        acc += proper_w.w[i] * proper_w.w[i];
        r.sigma[i] = std::sqrt(acc);
    }
    // Trailing zeros carry no information; the verdict is taken on the
    // nonzero prefix.
    int m = n;
    while (m > 0 && proper_w.w[m - 1] == 0.0) --m;
    for (int i = 0; i < m; ++i) {
        if (proper_w.w[i] <= tau * r.sigma[i]) {
            r.index = i + 1;  // 1-based
            return r;
        }
    }
    return r;
}

bool is_regular(const WeightVector& w, double tau) {
    double m = 0.0;
    for (double v : w.w) m = std::max(m, std::fabs(v));
    return m <= tau * w.norm;
}

namespace {

// Count 1-bits of f restricted to points with coordinate i fixed.
uint64_t count_ones_at(const TruthTable& f, int i, bool coord_one) {
    std::size_t size = f.size();
    uint64_t total = 0;
    if (i < 6) {
        uint64_t mask;
        switch (i) {
            case 0: mask = 0xaaaaaaaaaaaaaaaaULL; break;
            case 1: mask = 0xccccccccccccccccULL; break;
            case 2: mask = 0xf0f0f0f0f0f0f0f0ULL; break;
            case 3: mask = 0xff00ff00ff00ff00ULL; break;
            case 4: mask = 0xffff0000ffff0000ULL; break;
            default: mask = 0xffffffff00000000ULL; break;
        }
        if (!coord_one) mask = ~mask;
        for (std::size_t w = 0; w < f.bits.size(); ++w) {
            uint64_t word = f.bits[w];
            if (w + 1 == f.bits.size() && size < 64) word &= (uint64_t{1} << size) - 1;
            total += std::popcount(word & mask);
        }
    } else {
        std::size_t block = std::size_t{1} << (i - 6);  // words per half-period
        for (std::size_t w = 0; w < f.bits.size(); ++w) {
            bool hi = (w / block) & 1;
            if (hi != coord_one) continue;
            uint64_t word = f.bits[w];
            if (w + 1 == f.bits.size() && size < 64) word &= (uint64_t{1} << size) - 1;
            total += std::popcount(word);
        }
    }
    return total;
}

}  // namespace

ChowParams chow_parameters(const TruthTable& f) {
    ChowParams c;
    c.n = f.n;
    std::size_t size = f.size();
    uint64_t ones = 0;
    for (std::size_t w = 0; w < f.bits.size(); ++w) {
        uint64_t word = f.bits[w];
        if (w + 1 == f.bits.size() && size < 64) word &= (uint64_t{1} << size) - 1;
        ones += std::popcount(word);
    }
    c.num_mean = 2 * int64_t(ones) - int64_t(size);
    c.num_coords.resize(f.n);
    for (int i = 0; i < f.n; ++i) {
        uint64_t hi = count_ones_at(f, i, true);
        uint64_t lo = ones - hi;
        // sum f(x) x_i = 2(ones_hi - ones_lo)
        c.num_coords[i] = 2 * (int64_t(hi) - int64_t(lo));
    }
    return c;
}

ChowParams chow_parameters(const Ltf& f) { return chow_parameters(to_truth_table(f)); }

double ChowParams::w1() const {
    double acc = 0.0;
    double scale = double(table_size(n));
    for (int64_t num : num_coords) {
        double v = double(num) / scale;
        acc += v * v;
    }
    return acc;
}

Ltf balanced_lift(const Ltf& f) {
    int n = f.dim();
    require_dim(n, kMaxDim - 1);
    DegeneracyResult deg = is_degenerate(f);
    if (deg.verdict == Verdict::Yes) throw std::invalid_argument("degenerate input");
    if (deg.verdict == Verdict::Indeterminate) {
        throw std::runtime_error("borderline margins; lift needs exact weights");
    }

    // Retune the threshold inside the equivalence interval of f so that the
    // lifted function has no point on its hyperplane.
    std::vector<double> values(table_size(n));
    {
        double s = 0.0;
        for (double v : f.weights.w) s -= v;
        values[0] = s;
        std::size_t g = 0;
        for (std::size_t k = 1; k < values.size(); ++k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            s += (g & bit) ? 2.0 * f.weights.w[i] : -2.0 * f.weights.w[i];
            values[g] = s;
        }
    }
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (v < f.theta) {
            lo = std::max(lo, v);
        } else {
            hi = std::min(hi, v);
        }
    }
    double span = 1.0;
    if (std::isfinite(lo)) span = std::max(span, std::fabs(lo));
    if (std::isfinite(hi)) span = std::max(span, std::fabs(hi));
    if (!std::isfinite(lo)) lo = hi - 2.0 * span;
    if (!std::isfinite(hi)) hi = lo + 2.0 * span;

    double theta = 0.0;
    double tol = 1e-12 * std::max(f.weights.norm, 1.0);
    bool found = false;
    int slots = 2 * int(values.size()) + 3;
    for (int k = 1; k < slots && !found; ++k) {
        double cand = lo + (hi - lo) * double(k) / double(slots);
        bool clear = true;
        for (double v : values) {
            if (std::fabs(std::fabs(v) - std::fabs(cand)) <= tol) {
                clear = false;
                break;
            }
        }
        if (clear) {
            theta = cand;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("could not retune threshold for lift");

    std::vector<double> lifted = f.weights.w;
    lifted.push_back(-theta);
    return Ltf(std::move(lifted), 0.0);
}

std::string format_ltf(const Ltf& f) {
    std::ostringstream out;
    char buf[64];
    for (int i = 0; i < f.dim(); ++i) {
        if (i) out << ',';
        std::snprintf(buf, sizeof buf, "%.17g", f.weights.w[i]);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", f.theta);
    out << " ; " << buf;
    return out.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

bool parse_weights_exact(const std::string& text, std::vector<Rational>& w) {
    w.clear();
    for (const auto& tok : split(text, ',')) {
        auto q = parse_rational(tok);
        if (!q) return false;
        w.push_back(*q);
    }
    return !w.empty();
}

std::optional<std::vector<double>> parse_weights(const std::string& text) {
    std::vector<Rational> w;
    if (!parse_weights_exact(text, w)) return std::nullopt;
    std::vector<double> out;
    out.reserve(w.size());
    for (const auto& q : w) out.push_back(to_double(q));
    return out;
}

bool parse_ltf_exact(const std::string& text, std::vector<Rational>& w, Rational& theta) {
    auto parts = split(text, ';');
    if (parts.empty() || parts.size() > 2) return false;
    if (!parse_weights_exact(parts[0], w)) return false;
    theta = 0;
    if (parts.size() == 2) {
        auto q = parse_rational(parts[1]);
        if (!q) return false;
        theta = *q;
    }
    return true;
}

std::optional<Ltf> parse_ltf(const std::string& text) {
    std::vector<Rational> w;
    Rational theta;
    if (!parse_ltf_exact(text, w, theta)) return std::nullopt;
    std::vector<double> wd;
    wd.reserve(w.size());
    for (const auto& q : w) wd.push_back(to_double(q));
    return Ltf(std::move(wd), to_double(theta));
}

}  // namespace bfc
