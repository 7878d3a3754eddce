#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bfc/bks.hpp"
#include "bfc/enumeration.hpp"
#include "bfc/gaussian.hpp"
#include "bfc/hypercube.hpp"
#include "bfc/khintchine.hpp"
#include "bfc/ltf.hpp"
#include "bfc/tomaszewski.hpp"
#include "bfc/verify.hpp"
#include "json.hpp"

using namespace bfc;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

struct GlobalFlags {
    uint64_t seed = 0;
    int threads = 0;
    bool exact = false;
    std::string format = "json";
    std::string catalog_dir;
};

std::string resolve_catalog_dir(const GlobalFlags& g) {
    if (!g.catalog_dir.empty()) return g.catalog_dir;
    if (const char* env = std::getenv("BFC_CATALOG_DIR")) return env;
    return "catalogs";
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

int fail_indeterminate(const std::string& msg) {
    std::cerr << "indeterminate: " << msg << "\n";
    return kExitIndeterminate;
}

// Exact mode accepts integers and fractions only; a decimal literal is not
// an exact value, so borderline comparisons would be meaningless.
bool exact_tokens_ok(const std::string& text) {
    return !is_decimal_literal(text);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_fourier(const GlobalFlags&, const std::string& ltf_text,
                const std::string& table_in, const std::string& table_out,
                const std::string& spectrum_out, bool json_out, bool inverse,
                const std::string& spectrum_in) {
    try {
        TruthTable table;
        if (inverse) {
            if (spectrum_in.empty()) return fail_usage("--inverse needs --spectrum-in");
            FourierSpectrum s = load_spectrum(spectrum_in);
            table = inverse_wht_table(s);
        } else if (!ltf_text.empty()) {
            auto f = parse_ltf(ltf_text);
            if (!f) return fail_usage("cannot parse --ltf (offending flag: --ltf)");
            table = to_truth_table(*f);
        } else if (!table_in.empty()) {
            table = load_table(table_in);
        } else {
            return fail_usage("one of --ltf, --table-in, --inverse is required");
        }

        if (!table_out.empty()) save_table(table_out, table);
        FourierSpectrum spec = wht(table);
        if (!spectrum_out.empty()) save_spectrum(spectrum_out, spec);

        ordered_json j;
        j["schema"] = "bfc.fourier.v1";
        j["n"] = table.n;
        if (json_out && table.n <= 10) {
            j["table"] = ordered_json::parse(table_json(table));
            j["spectrum"] = ordered_json::parse(spectrum_json(spec));
        }
        j["w1"] = degree_weight(spec, 1);
        j["w_le1"] = degree_weight(spec, 1, LevelMode::AtMost);
        j["mean"] = spec.coeffs[0];
        emit(j);
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_khintchine(const GlobalFlags& g, const std::string& weights) {
    std::vector<Rational> wq;
    if (!parse_weights_exact(weights, wq)) {
        return fail_usage("cannot parse --w (offending flag: --w)");
    }
    if (g.exact && !exact_tokens_ok(weights)) {
        return fail_indeterminate("exact mode needs rational weights such as 3/5");
    }
    std::vector<double> wd;
    wd.reserve(wq.size());
    for (const auto& q : wq) wd.push_back(to_double(q));
    WeightVector wv(wd);
    if (wv.norm == 0.0) return fail_usage("zero weight vector");

    ordered_json j;
    j["schema"] = "bfc.khintchine.v1";
    j["w"] = wd;
    j["K"] = khintchine_constant(wv);
    if (g.exact) {
        j["K_exact"] = rational_str(khintchine_exact(wq));
    }
    j["norm"] = wv.norm;
    if (wd.size() >= 2) {
        std::vector<double> unit = wd;
        for (double& v : unit) v /= wv.norm;
        WeightVector uv(unit);
        j["unit"] = {{"K", khintchine_constant(uv)}, {"d", dist_to_extremal(uv)}};
    }
    if (int(wd.size()) <= 24) {
        EllMoments m = ell_moments(wv);
        j["ell"] = {{"mean", m.mean},
                    {"var", m.var},
                    {"influences", m.influences},
                    {"weight_ge4", m.weight_ge4}};
    }
    emit(j);
    return kExitOk;
}

int cmd_scan_robust(const GlobalFlags& g, int n_min, int n_max, double d_min,
                    uint64_t samples, bool no_grid, bool no_random, bool no_perturb,
                    const std::string& csv_path) {
    RobustScanConfig cfg;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    cfg.d_min = d_min;
    cfg.samples = samples;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    cfg.grid = !no_grid;
    cfg.random = !no_random;
    cfg.perturb = !no_perturb;

    std::ofstream csv;
    CsvRow sink = nullptr;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) return fail_usage("cannot write " + csv_path);
        csv << "w,K,d,ratio\n";
        sink = [&csv](const std::string& row) { csv << row << "\n"; };
    }
    try {
        RobustScanReport rep = robust_scan(cfg, sink);
        std::cout << robust_report_json(rep) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_enumerate(const GlobalFlags& g, int n, const std::string& mode_text,
                  bool json_records) {
    CatalogMode mode;
    if (mode_text == "all") {
        mode = CatalogMode::AllLtfs;
    } else if (mode_text == "zero") {
        mode = CatalogMode::ZeroThreshold;
    } else {
        return fail_usage("--mode must be all or zero (offending flag: --mode)");
    }
    try {
        Catalog cat = load_or_build(resolve_catalog_dir(g), n, mode, g.threads);
        if (json_records) {
            std::cout << catalog_json(cat) << "\n";
            return kExitOk;
        }
        ordered_json j;
        j["schema"] = "bfc.enumerate.v1";
        j["n"] = cat.n;
        j["mode"] = mode_name(cat.mode);
        j["classes"] = cat.records.size();
        j["full_count"] = cat.full_count;
        j["method"] = cat.method;
        j["path"] = catalog_path(resolve_catalog_dir(g), n, mode);
        emit(j);
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_bks(const GlobalFlags& g, int k, double eps) {
    if (eps > 0.0) {
        // the accuracy-to-size map explodes immediately; print it, never run it
        std::cout << "advisory: accuracy eps = " << eps
                  << " maps to K = ceil(eps^-24) = about " << std::pow(eps, -24.0)
                  << " variables; far past desk scale. Pass --k directly.\n";
        return kExitOk;
    }
    if (k <= 0) return fail_usage("--k is required (or --eps for the advisory map)");
    try {
        BksReport rep = gamma_search(k, resolve_catalog_dir(g), g.threads);
        std::cout << bks_report_json(rep) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_bks_reduce(const GlobalFlags&, const std::string& weights, double delta, int m) {
    auto wd = parse_weights(weights);
    if (!wd) return fail_usage("cannot parse --weights (offending flag: --weights)");
    try {
        ReductionTrace tr = reduce_w1(Ltf(*wd, 0.0), delta, m);
        std::cout << reduction_trace_json(tr) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    } catch (const std::runtime_error& e) {
        return fail_indeterminate(e.what());
    }
}

int cmd_tom(const GlobalFlags& g, const std::string& weights, const std::string& a_text,
            bool normalize) {
    std::vector<Rational> wq;
    if (!parse_weights_exact(weights, wq)) {
        return fail_usage("cannot parse --w (offending flag: --w)");
    }
    auto aq = parse_rational(a_text);
    if (!aq || *aq < 0) return fail_usage("bad --a (offending flag: --a)");

    ordered_json j;
    j["schema"] = "bfc.tom.v1";
    if (g.exact) {
        if (!exact_tokens_ok(weights) || !exact_tokens_ok(a_text)) {
            return fail_indeterminate(
                "exact mode needs rational weights such as 3/5; decimal "
                "literals are borderline by construction");
        }
        ExactTailProb r = t_of_w_exact(wq, *aq, normalize);
        j["mode"] = "exact";
        j["in_prob"] = rational_str(r.in_prob);
        j["out_prob"] = rational_str(r.out_prob);
        j["in_float"] = to_double(r.in_prob);
        j["out_float"] = to_double(r.out_prob);
    } else {
        std::vector<double> wd;
        for (const auto& q : wq) wd.push_back(to_double(q));
        WeightVector wv(wd);
        if (normalize) {
            for (double& v : wd) v /= wv.norm;
            wv = WeightVector(wd);
        }
        TailProb r = t_of_w(wv, to_double(*aq));
        if (r.verdict == Verdict::Indeterminate) {
            return fail_indeterminate(
                "a margin sits on the boundary; rerun with --exact and "
                "rational weights");
        }
        j["mode"] = "float";
        j["in_prob"] = r.in_prob;
        j["out_prob"] = r.out_prob;
    }
    emit(j);
    return kExitOk;
}

int cmd_tom_sphere(const GlobalFlags& g, int m) {
    try {
        TomReport rep = t_sphere(m, resolve_catalog_dir(g), g.threads);
        std::cout << tom_report_json(rep) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_tom_reduce(const GlobalFlags&, const std::string& weights, double eps) {
    auto wd = parse_weights(weights);
    if (!wd) return fail_usage("cannot parse --w (offending flag: --w)");
    WeightVector wv(*wd);
    if (std::fabs(wv.norm - 1.0) > 1e-9) {
        // normalize on behalf of the caller; the reduction needs a unit vector
        for (double& v : wv.w) v /= wv.norm;
        wv = WeightVector(wv.w);
    }
    try {
        ReduceTResult r = reduce_dimension_t(wv, eps);
        ordered_json j = ordered_json::parse(reduce_t_json(r, wv));
        // exact tail probabilities on both sides when within reach
        if (wv.dim() <= 24 && r.v.dim() <= 24) {
            std::vector<Rational> wq, vq;
            for (double v : wv.w) wq.push_back(rational_from_double(v));
            for (double v : r.v.w) vq.push_back(rational_from_double(v));
            Rational tw = t_of_w_exact(wq, Rational(1)).in_prob;
            Rational tv = t_of_w_exact(vq, Rational(1)).in_prob;
            j["t_input"] = to_double(tw);
            j["t_reduced"] = to_double(tv);
            j["t_gap"] = to_double(abs(tv - tw));
        }
        emit(j);
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
}

int cmd_verify(const GlobalFlags& g, const std::string& filter) {
    VerifyOptions opt;
    opt.seed = g.seed ? g.seed : 12345;
    opt.threads = g.threads;
    opt.catalog_dir = resolve_catalog_dir(g);
    opt.filter = filter;
    std::vector<CheckResult> results = run_verification(opt);
    bool all_pass = true;
    if (g.format == "json") {
        ordered_json j;
        j["schema"] = "bfc.verify.v1";
        auto arr = ordered_json::array();
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            arr.push_back({{"key", r.key}, {"pass", r.pass}, {"detail", r.detail}});
        }
        j["checks"] = std::move(arr);
        j["all_pass"] = all_pass;
        emit(j);
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            std::printf("%-34s %s  %s\n", r.key.c_str(), r.pass ? "PASS" : "FAIL",
                        r.detail.c_str());
        }
        std::printf("%zu checks, %s\n", results.size(), all_pass ? "all green" : "FAILURES");
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Fourier-analytic constants for linear threshold functions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalFlags g;
    app.add_option("--seed", g.seed, "base seed for randomized runs");
    app.add_option("--threads", g.threads, "worker threads (0 = auto)");
    app.add_flag("--exact", g.exact, "exact rational arithmetic where supported");
    app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--catalog-dir", g.catalog_dir,
                   "catalog cache directory (env BFC_CATALOG_DIR)");

    // fourier
    auto* fourier = app.add_subcommand("fourier", "table and spectrum I/O");
    std::string f_ltf, f_table_in, f_table_out, f_spec_out, f_spec_in;
    bool f_json = false, f_inverse = false;
    fourier->add_option("--ltf", f_ltf, "text form \"w1,...,wn ; theta\"");
    fourier->add_option("--table-in", f_table_in, "read a packed table");
    fourier->add_option("--table-out", f_table_out, "write the packed table");
    fourier->add_option("--spectrum-out", f_spec_out, "write the spectrum");
    fourier->add_option("--spectrum-in", f_spec_in, "spectrum for --inverse");
    fourier->add_flag("--json", f_json, "inline table and spectrum (n <= 10)");
    fourier->add_flag("--inverse", f_inverse, "reconstruct the table from a spectrum");

    // khintchine
    auto* kh = app.add_subcommand("khintchine", "K(w), d(w) and the |w.x| moments");
    std::string kh_w;
    kh->add_option("--w", kh_w, "weights, e.g. \"1/2,1/2,1/2,1/2\"")->required();

    // scan-robust
    auto* scan = app.add_subcommand("scan-robust", "empirical robustness scan");
    int s_nmin = 2, s_nmax = 4;
    double s_dmin = 0.1;
    uint64_t s_samples = 1000;
    bool s_no_grid = false, s_no_random = false, s_no_perturb = false;
    std::string s_csv;
    scan->add_option("--n-min", s_nmin);
    scan->add_option("--n-max", s_nmax);
    scan->add_option("--d-min", s_dmin, "exclusion radius around the extremal family");
    scan->add_option("--samples", s_samples, "per-sampler sample count");
    scan->add_flag("--no-grid", s_no_grid);
    scan->add_flag("--no-random", s_no_random);
    scan->add_flag("--no-perturb", s_no_perturb);
    scan->add_option("--csv", s_csv, "write per-sample rows to this file");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "threshold-function catalogs");
    int e_n = 3;
    std::string e_mode = "zero";
    bool e_json = false;
    en->add_option("--n", e_n, "dimension")->required();
    en->add_option("--mode", e_mode, "all or zero");
    en->add_flag("--json", e_json, "full record dump (n <= 4)");

    // bks
    auto* bk = app.add_subcommand("bks", "minimum level-1 weight over a catalog");
    int b_k = 0;
    double b_eps = 0.0;
    bk->add_option("--k", b_k, "number of variables (catalog reach: K <= 7)");
    bk->add_option("--eps", b_eps, "print the accuracy-to-K advisory map and exit");
    auto* bkr = bk->add_subcommand("reduce", "variable-reduction pipeline trace");
    std::string br_w;
    double br_delta = 0.3;
    int br_m = 256;
    bkr->add_option("--weights", br_w, "zero-threshold weights")->required();
    bkr->add_option("--delta", br_delta, "regularity parameter");
    bkr->add_option("--m", br_m, "tail block size for the final stage");

    // tom
    auto* tm = app.add_subcommand("tom", "tail probabilities of |w.x|");
    std::string t_w, t_a = "1";
    bool t_norm = false;
    tm->add_option("--w", t_w, "weights");
    tm->add_option("--a", t_a, "radius (default 1)");
    tm->add_flag("--normalize", t_norm, "divide w by its norm first");
    auto* tms = tm->add_subcommand("sphere", "exact infimum over unit vectors");
    int ts_m = 3;
    tms->add_option("--m", ts_m, "dimension (2..5)")->required();
    auto* tmr = tm->add_subcommand("reduce", "dimension reduction for the tail probability");
    std::string tr_w;
    double tr_eps = 0.25;
    tmr->add_option("--w", tr_w, "unit weights")->required();
    tmr->add_option("--eps", tr_eps, "target accuracy");

    // verify
    auto* vf = app.add_subcommand("verify", "run the full invariant suite");
    std::string v_filter;
    vf->add_option("--filter", v_filter, "substring filter on check keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (fourier->parsed()) {
        return cmd_fourier(g, f_ltf, f_table_in, f_table_out, f_spec_out, f_json,
                           f_inverse, f_spec_in);
    }
    if (kh->parsed()) return cmd_khintchine(g, kh_w);
    if (scan->parsed()) {
        return cmd_scan_robust(g, s_nmin, s_nmax, s_dmin, s_samples, s_no_grid,
                               s_no_random, s_no_perturb, s_csv);
    }
    if (en->parsed()) return cmd_enumerate(g, e_n, e_mode, e_json);
    if (bk->parsed()) {
        if (bkr->parsed()) return cmd_bks_reduce(g, br_w, br_delta, br_m);
        return cmd_bks(g, b_k, b_eps);
    }
    if (tm->parsed()) {
        if (tms->parsed()) return cmd_tom_sphere(g, ts_m);
        if (tmr->parsed()) return cmd_tom_reduce(g, tr_w, tr_eps);
        if (t_w.empty()) return fail_usage("--w is required (offending flag: --w)");
        return cmd_tom(g, t_w, t_a, t_norm);
    }
    if (vf->parsed()) return cmd_verify(g, v_filter);
    return fail_usage("unknown subcommand");
}
