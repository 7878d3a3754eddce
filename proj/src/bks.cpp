#include "bfc/bks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bfc/common.hpp"
#include "bfc/gaussian.hpp"
#include "json.hpp"

namespace bfc {

double w1_of_ltf(const Ltf& f) {
    int n = f.dim();
    require_dim(n);
    std::vector<int64_t> acc(n, 0);
    double s = -f.theta;
    for (double v : f.weights.w) s -= v;
    std::size_t g = 0;
    for (std::size_t k = 0; k < table_size(n); ++k) {
        if (k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            s += (g & bit) ? 2.0 * f.weights.w[i] : -2.0 * f.weights.w[i];
        }
        int fx = s >= 0.0 ? 1 : -1;
        for (int i = 0; i < n; ++i) {
            acc[i] += ((g >> i) & 1) ? fx : -fx;
        }
    }
    double total = 0.0;
    double scale = 1.0 / double(table_size(n));
    for (int i = 0; i < n; ++i) {
        double c = double(acc[i]) * scale;
        total += c * c;
    }
    return total;
}

double w1_sum_form(const std::vector<double>& head, double z_coeff, int m) {
    if (m < 1) throw std::invalid_argument("tail block needs at least one variable");
    if (!(z_coeff > 0.0)) throw std::invalid_argument("z coefficient must be positive");
    int h = int(head.size());
    if (h > 24) throw std::invalid_argument("head too large");

    // Binomial collapse: z enters only through s = #{+1}; prefix sums give
    // O(1) work per head assignment.
    std::vector<double> pmf(m + 1);
    double log2m = double(m) * std::log(2.0);
    for (int s = 0; s <= m; ++s) {
        double lp = std::lgamma(m + 1.0) - std::lgamma(s + 1.0) - std::lgamma(m - s + 1.0) -
                    log2m;
        pmf[s] = std::exp(lp);
    }
    std::vector<double> cdf(m + 2, 0.0), zsum(m + 2, 0.0);
    for (int s = 0; s <= m; ++s) {
        cdf[s + 1] = cdf[s] + pmf[s];
        zsum[s + 1] = zsum[s] + pmf[s] * (2.0 * s - m) / double(m);
    }

    std::vector<double> head_acc(h, 0.0);
    double z_acc = 0.0;
    std::size_t size = std::size_t{1} << h;
    double a = 0.0;
    for (double v : head) a -= v;
    std::size_t g = 0;
    for (std::size_t k = 0; k < size; ++k) {
        if (k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            a += (g & bit) ? 2.0 * head[i] : -2.0 * head[i];
        }
        // g = +1 iff a + z_coeff (2s - m) >= 0, i.e. s >= (m - a/z_coeff)/2.
        double boundary = 0.5 * (double(m) - a / z_coeff);
        int s_star = int(std::ceil(boundary - 1e-12));
        s_star = std::clamp(s_star, 0, m + 1);
        double cond_mean = 1.0 - 2.0 * cdf[s_star];
        double cond_z = -2.0 * zsum[s_star];  // total zsum is zero
        for (int i = 0; i < h; ++i) {
            head_acc[i] += ((g >> i) & 1) ? cond_mean : -cond_mean;
        }
        z_acc += cond_z;
    }
    double scale = 1.0 / double(size);
    double total = 0.0;
    for (int i = 0; i < h; ++i) {
        double c = head_acc[i] * scale;
        total += c * c;
    }
    double zc = z_acc * scale;
    total += double(m) * zc * zc;
    return total;
}

BksReport gamma_search(int k, const std::string& catalog_dir, int threads) {
    if (k < 1 || k > 7) throw std::invalid_argument("catalog reach is K <= 7");
    Catalog cat = load_or_build(catalog_dir, k, CatalogMode::ZeroThreshold, threads);

    BksReport rep;
    rep.k = k;
    rep.classes = cat.records.size();
    rep.full_count = cat.full_count;
    if (cat.records.empty()) throw std::runtime_error("catalog unavailable");

    std::map<double, uint64_t> hist;
    const LtfRecord* best = nullptr;
    for (const auto& r : cat.records) {
        hist[r.w1] += r.orbit;
        // w1 values are exact dyadic rationals; records are sorted by table,
        // so keeping strict improvements yields the lexicographically least
        // minimizer.
        if (!best || r.w1 < best->w1) best = &r;
    }
    rep.gamma = best->w1;
    rep.argmin = *best;
    rep.histogram.assign(hist.begin(), hist.end());
    return rep;
}

int64_t junta_cutoff(double delta) {
    if (!(delta > 0.0) || delta >= 2.0) throw std::invalid_argument("delta out of range");
    return int64_t(std::ceil((2.0 / (delta * delta)) * std::log(4.0 / delta)));
}

ReductionTrace reduce_w1(const Ltf& f, double delta, int m) {
    if (f.theta != 0.0) throw std::invalid_argument("zero-threshold input required");
    if (m < 1) throw std::invalid_argument("M must be at least 1");
    int n = f.dim();
    require_dim(n);
    DegeneracyResult deg = is_degenerate(f);
    if (deg.verdict == Verdict::Yes) throw std::invalid_argument("degenerate input");
    if (deg.verdict == Verdict::Indeterminate) {
        throw std::runtime_error("borderline margins; reduction needs exact weights");
    }

    ProperForm pf = make_proper(f.weights);
    ReductionTrace tr;
    tr.input_weights = pf.proper.w;
    tr.delta = delta;
    tr.m = m;
    tr.cutoff = junta_cutoff(delta);
    CriticalIndexResult ci = critical_index(pf.proper, delta);
    tr.critical = ci.index;

    Ltf proper_f(pf.proper.w, 0.0);
    tr.w1_input = n <= 26 ? w1_of_ltf(proper_f) : std::nan("");

    bool large_ci = !ci.index || int64_t(*ci.index) >= tr.cutoff;
    if (large_ci) {
        // Junta branch: the function is close to its head restriction.
        int head_len = int(std::min<int64_t>(tr.cutoff, n));
        tr.case_two = false;
        tr.head.assign(pf.proper.w.begin(), pf.proper.w.begin() + head_len);
        tr.tail_norm = ci.sigma[head_len];
        Ltf junta(tr.head, 0.0);
        tr.w1_output = w1_of_ltf(junta);
        tr.output_weights = tr.head;
        // Hamming distance between f and the junta, over the full cube.
        std::size_t size = table_size(n);
        uint64_t diff = 0;
        double s = 0.0;
        for (double v : pf.proper.w) s -= v;
        double sh = 0.0;
        for (double v : tr.head) sh -= v;
        std::size_t g = 0;
        for (std::size_t k = 0; k < size; ++k) {
            if (k) {
                int i = std::countr_zero(k);
                std::size_t bit = std::size_t{1} << i;
                g ^= bit;
                double dv = (g & bit) ? 2.0 : -2.0;
                s += dv * pf.proper.w[i];
                if (i < head_len) sh += dv * tr.head[i];
            }
            diff += (s >= 0.0) != (sh >= 0.0);
        }
        tr.dist_junta = double(diff) / double(size);
        return tr;
    }

    // Head+tail branch: Gaussianize, collapse, Booleanize.
    tr.case_two = true;
    int c = *ci.index;
    tr.head.assign(pf.proper.w.begin(), pf.proper.w.begin() + (c - 1));
    std::vector<double> tail(pf.proper.w.begin() + (c - 1), pf.proper.w.end());
    tr.tail_norm = ci.sigma[c - 1];

    if (int(tr.head.size()) <= 24) {
        tr.w1_mixed = mixed_degree1_split(tr.head, tail).total;
        tr.w1_collapsed = mixed_degree1(tr.head, tr.tail_norm).total;
    } else {
        // head enumeration out of reach; flagged, not fatal
        tr.w1_mixed = std::nan("");
        tr.w1_collapsed = std::nan("");
    }

    tr.z_coeff = tr.tail_norm / std::sqrt(double(m));
    tr.w1_output = w1_sum_form(tr.head, tr.z_coeff, m);
    tr.output_weights = tr.head;
    return tr;
}

std::string bks_report_json(const BksReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "bfc.bks.v1";
    j["k"] = r.k;
    j["gamma"] = r.gamma;
    j["classes"] = r.classes;
    j["full_count"] = r.full_count;
    j["argmin_weights"] = r.argmin.weights;
    j["argmin_threshold"] = r.argmin.threshold;
    j["argmin_orbit"] = r.argmin.orbit;
    auto hist = nlohmann::ordered_json::array();
    for (const auto& [w1, count] : r.histogram) {
        hist.push_back({{"w1", w1}, {"count", count}});
    }
    j["histogram"] = std::move(hist);
    return j.dump(2);
}

std::string reduction_trace_json(const ReductionTrace& t) {
    nlohmann::ordered_json j;
    j["schema"] = "bfc.reduce-w1.v1";
    j["input_weights"] = t.input_weights;
    j["delta"] = t.delta;
    j["m"] = t.m;
    j["case"] = t.case_two ? "head-tail" : "junta";
    j["cutoff"] = t.cutoff;
    if (t.critical) {
        j["critical_index"] = *t.critical;
    } else {
        j["critical_index"] = nullptr;
    }
    j["head"] = t.head;
    j["tail_norm"] = t.tail_norm;
    j["w1_input"] = t.w1_input;
    if (t.case_two) {
        j["w1_gaussian_tail"] = t.w1_mixed;
        j["w1_collapsed"] = t.w1_collapsed;
        j["z_coeff"] = t.z_coeff;
    } else {
        j["dist_junta"] = t.dist_junta;
    }
    j["w1_output"] = t.w1_output;
    return j.dump(2);
}

}  // namespace bfc
