#include "bfc/tomaszewski.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bfc/common.hpp"
#include "bfc/exact_lp.hpp"
#include "json.hpp"

namespace bfc {

TailProb t_of_w(const WeightVector& w, double a) {
    if (a < 0.0) throw std::invalid_argument("radius must be nonnegative");
    int n = w.dim();
    require_dim(n);
    std::size_t size = table_size(n);
    uint64_t inside = 0, outside = 0;
    double closest = std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double v : w.w) s -= v;
    std::size_t g = 0;
    for (std::size_t k = 0; k < size; ++k) {
        if (k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            s += (g & bit) ? 2.0 * w.w[i] : -2.0 * w.w[i];
        }
        double m = std::fabs(s);
        closest = std::min(closest, std::fabs(m - a));
        inside += m <= a;
        outside += m >= a;
    }
    TailProb r;
    r.in_prob = double(inside) / double(size);
    r.out_prob = double(outside) / double(size);
    if (closest < 1e-9 * std::max(w.norm, 1e-300)) {
        r.verdict = Verdict::Indeterminate;  // boundary case: use exact mode
    }
    return r;
}

ExactTailProb t_of_w_exact(const std::vector<Rational>& w, const Rational& a,
                           bool normalize) {
    if (a < 0) throw std::invalid_argument("radius must be nonnegative");
    int n = int(w.size());
    require_dim(n);
    // |w·x| <= a||w|| compares exactly on squares.
    Rational bound = a * a;
    if (normalize) bound *= norm_sq(w);
    std::size_t size = table_size(n);
    uint64_t inside = 0, outside = 0;
    Rational s = 0;
    for (const auto& v : w) s -= v;
    std::size_t g = 0;
    for (std::size_t k = 0; k < size; ++k) {
        if (k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            if (g & bit) {
                s += 2 * w[i];
            } else {
                s -= 2 * w[i];
            }
        }
        Rational sq = s * s;
        inside += sq <= bound;
        outside += sq >= bound;
    }
    ExactTailProb r;
    r.in_prob = Rational(long(inside)) / Rational(long(size));
    r.out_prob = Rational(long(outside)) / Rational(long(size));
    return r;
}

TailProb t_of_w_mc(const WeightVector& w, double a, uint64_t samples, uint64_t seed,
                   double* std_err) {
    Rng rng(seed);
    int n = w.dim();
    uint64_t inside = 0;
    for (uint64_t it = 0; it < samples; ++it) {
        double s = 0.0;
        int i = 0;
        while (i < n) {
            uint64_t r = rng.next();
            for (int b = 0; b < 64 && i < n; ++b, ++i) {
                s += ((r >> b) & 1) ? w.w[i] : -w.w[i];
            }
        }
        inside += std::fabs(s) <= a;
    }
    TailProb r;
    r.in_prob = double(inside) / double(samples);
    r.out_prob = 1.0 - r.in_prob;
    if (std_err) {
        double p = r.in_prob;
        *std_err = std::sqrt(std::max(0.0, p * (1.0 - p)) / double(samples));
    }
    return r;
}

FeasibilityResult min_norm_feasibility(const std::vector<uint32_t>& points, int m) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    if (m < 1 || m > 10) throw std::invalid_argument("dimension out of range");
    FeasibilityResult res;

    uint32_t all = uint32_t(table_size(m)) - 1;
    std::vector<uint32_t> pts = points;
    std::sort(pts.begin(), pts.end());
    for (uint32_t p : pts) {
        if (std::binary_search(pts.begin(), pts.end(), (~p) & all)) {
            return res;  // antipodal pair: infeasible
        }
    }

    {
        RatMatrix a(pts.size(), RatVector(m, Rational(0)));
        RatVector b(pts.size(), Rational(1));
        for (std::size_t r = 0; r < pts.size(); ++r) {
            for (int i = 0; i < m; ++i) {
                a[r][i] = Rational(((pts[r] >> i) & 1) ? 1 : -1);
            }
        }
        if (!lp_feasible(a, b)) return res;
    }
    res.feasible = true;

    // Exhaustive active sets: the minimizer satisfies w = A_S^T lambda with
    // Gram(S) lambda = 1, lambda >= 0 on an independent subset of size <= m,
    // and any such KKT point is globally optimal.
    int np = int(pts.size());
    auto gram_entry = [&](uint32_t p, uint32_t q) {
        return Rational(m - 2 * std::popcount((p ^ q) & all));
    };
    bool have = false;
    Rational best_nu_sq;
    std::vector<Rational> best_w;

    std::vector<int> subset;
    auto consider = [&]() {
        int k = int(subset.size());
        RatMatrix gram(k, RatVector(k));
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                gram[i][j] = gram_entry(pts[subset[i]], pts[subset[j]]);
            }
        }
        auto lambda = solve_linear(gram, RatVector(k, Rational(1)));
        if (!lambda) return;
        Rational nu_sq = 0;
        for (const auto& l : *lambda) {
            if (l < 0) return;
            nu_sq += l;  // ||w||^2 = sum lambda_i (a_i · w) = sum lambda_i
        }
        if (have && nu_sq >= best_nu_sq) return;
        std::vector<Rational> w(m, Rational(0));
        for (int i = 0; i < k; ++i) {
            uint32_t p = pts[subset[i]];
            for (int c = 0; c < m; ++c) {
                if ((p >> c) & 1) {
                    w[c] += (*lambda)[i];
                } else {
                    w[c] -= (*lambda)[i];
                }
            }
        }
        for (uint32_t p : pts) {
            if (dot(w, p, m) < 1) return;  // KKT point must be primal feasible
        }
        have = true;
        best_nu_sq = nu_sq;
        best_w = std::move(w);
    };
    // all subsets of size 1..m
    std::function<void(int, int)> rec = [&](int start, int remaining) {
        if (!subset.empty()) consider();
        if (remaining == 0) return;
        for (int i = start; i < np; ++i) {
            subset.push_back(i);
            rec(i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    rec(0, m);

    if (!have) throw std::runtime_error("feasible program with no KKT certificate");
    res.nu_sq = best_nu_sq;
    res.witness = std::move(best_w);
    res.separable = best_nu_sq < 1;
    res.exact_certificate = true;  // KKT system and margins checked in the rationals
    return res;
}

TomReport t_sphere(int m, const std::string& catalog_dir, int threads) {
    if (m < 2 || m > 5) throw std::invalid_argument("sphere computation limited to m <= 5");
    Catalog cat = load_or_build(catalog_dir, m, CatalogMode::AllLtfs, threads);

    TomReport rep;
    rep.m = m;
    rep.candidates = cat.records.size();

    // Candidate positive sides, largest first; symmetry lets canonical
    // representatives stand in for their whole class.
    struct Cand {
        uint64_t size;
        const LtfRecord* rec;
    };
    std::vector<Cand> cands;
    for (const auto& r : cat.records) {
        uint64_t ones = 0;
        for (std::size_t b = 0; b < r.table.size(); ++b) ones += r.table.bit(b);
        if (ones == 0) continue;
        cands.push_back({ones, &r});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.rec->table < b.rec->table;
    });

    for (std::size_t idx = 0; idx < cands.size();) {
        uint64_t size = cands[idx].size;
        std::size_t group_end = idx;
        while (group_end < cands.size() && cands[group_end].size == size) ++group_end;
        // Every set of the current size is checked before accepting a winner.
        std::optional<std::size_t> winner;
        FeasibilityResult winner_fr;
        for (std::size_t i = idx; i < group_end; ++i) {
            std::vector<uint32_t> pts;
            for (std::size_t b = 0; b < cands[i].rec->table.size(); ++b) {
                if (cands[i].rec->table.bit(b)) pts.push_back(uint32_t(b));
            }
            ++rep.oracle_calls;
            FeasibilityResult fr = min_norm_feasibility(pts, m);
            if (fr.separable && !winner) {
                winner = i;
                winner_fr = std::move(fr);
            }
        }
        if (winner) {
            rep.p_size = size;
            rep.s_size = 2 * size;
            rep.value = 1 - Rational(2 * long(size)) / Rational(long(table_size(m)));
            double norm = std::sqrt(to_double(winner_fr.nu_sq));
            rep.witness.resize(m);
            for (int c = 0; c < m; ++c) {
                rep.witness[c] = to_double(winner_fr.witness[c]) / norm;
            }
            return rep;
        }
        idx = group_end;
    }
    // Unreachable: singletons are always separable.
    throw std::runtime_error("no separable set found");
}

ReduceTResult reduce_dimension_t(const WeightVector& unit_w, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (std::fabs(unit_w.norm - 1.0) > 1e-9) {
        throw std::invalid_argument("unit vector required");
    }
    ProperForm pf = make_proper(unit_w);
    int n = pf.proper.dim();

    ReduceTResult r;
    r.eta = eps / 64.0;
    r.t_param = 8.0 * std::log2(16.0 / r.eta);
    r.k_param = int64_t(
        std::ceil(r.t_param / (r.eta * r.eta) * std::log(r.t_param / r.eta)));
    CriticalIndexResult ci = critical_index(pf.proper, r.eta);
    r.critical = ci.index;

    bool large = !ci.index || int64_t(*ci.index) > r.k_param;
    if (large) {
        r.small_branch = false;
        if (int64_t(n) <= r.k_param) {
            r.v = pf.proper;  // already inside the target dimension
            return r;
        }
        int k = int(r.k_param);
        std::vector<double> v(pf.proper.w.begin(), pf.proper.w.begin() + k);
        double tail = ci.sigma[k];
        if (tail > 0.0) v.push_back(tail);
        r.v = WeightVector(std::move(v));
        return r;
    }

    r.small_branch = true;
    int c = *ci.index;
    int64_t copies = int64_t(std::ceil(4.0 / (r.eta * r.eta)));
    double tail_norm = ci.sigma[c - 1];
    std::vector<double> v(pf.proper.w.begin(), pf.proper.w.begin() + (c - 1));
    double coord = 0.5 * r.eta * tail_norm;
    for (int64_t i = 0; i < copies; ++i) v.push_back(coord);
    WeightVector out(std::move(v));
    double norm = out.norm;
    if (norm > 0.0) {
        for (double& x : out.w) x /= norm;
        out.norm = out.recompute_norm();
    }
    r.v = std::move(out);
    return r;
}

std::string tom_report_json(const TomReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "bfc.tom-sphere.v1";
    j["m"] = r.m;
    j["value"] = rational_str(r.value);
    j["value_float"] = to_double(r.value);
    j["p_size"] = r.p_size;
    j["s_size"] = r.s_size;
    j["witness"] = r.witness;
    j["candidates"] = r.candidates;
    j["oracle_calls"] = r.oracle_calls;
    return j.dump(2);
}

std::string reduce_t_json(const ReduceTResult& r, const WeightVector& input) {
    nlohmann::ordered_json j;
    j["schema"] = "bfc.tom-reduce.v1";
    j["input"] = input.w;
    j["branch"] = r.small_branch ? "small-critical-index" : "large-critical-index";
    j["eta"] = r.eta;
    j["t"] = r.t_param;
    j["k"] = r.k_param;
    if (r.critical) {
        j["critical_index"] = *r.critical;
    } else {
        j["critical_index"] = nullptr;
    }
    j["v"] = r.v.w;
    return j.dump(2);
}

}  // namespace bfc
