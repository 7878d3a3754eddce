#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <stdexcept>

#include "bfc/bks.hpp"
#include "bfc/enumeration.hpp"
#include "bfc/gaussian.hpp"
#include "bfc/khintchine.hpp"
#include "bfc/ltf.hpp"
#include "bfc/tomaszewski.hpp"
#include "bfc/verify.hpp"

namespace py = pybind11;
using namespace bfc;

namespace {

std::vector<Rational> rationals_from(const std::string& text) {
    std::vector<Rational> w;
    if (!parse_weights_exact(text, w)) throw std::invalid_argument("bad weight list");
    return w;
}

CatalogMode mode_from(const std::string& mode) {
    if (mode == "all") return CatalogMode::AllLtfs;
    if (mode == "zero") return CatalogMode::ZeroThreshold;
    throw std::invalid_argument("mode must be 'all' or 'zero'");
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        default: return "indeterminate";
    }
}

int dim_of(std::size_t len) {
    int n = 0;
    while ((std::size_t{1} << n) < len) ++n;
    if ((std::size_t{1} << n) != len) {
        throw std::invalid_argument("length must be a power of two");
    }
    return n;
}

}  // namespace

PYBIND11_MODULE(_bfc, m) {
    m.doc() = "Exact Fourier-analytic constants for linear threshold functions";
    m.attr("__version__") = "0.1.0";

    m.def("to_table", [](const std::vector<double>& w, double theta) {
        TruthTable t = to_truth_table(Ltf(w, theta));
        std::vector<int> vals(t.size());
        for (std::size_t b = 0; b < t.size(); ++b) vals[b] = t.value(b);
        return vals;
    }, py::arg("weights"), py::arg("theta") = 0.0,
       "Truth table of sign(w.x - theta) as a list of +-1, little-endian points");

    m.def("wht", [](const std::vector<double>& values) {
        RealTable t(dim_of(values.size()));
        t.values = values;
        return wht(t).coeffs;
    }, py::arg("values"), "Fourier coefficients E[f(x) x_S] indexed by subset mask");

    m.def("inverse_wht", [](const std::vector<double>& coeffs) {
        FourierSpectrum s(dim_of(coeffs.size()));
        s.coeffs = coeffs;
        return inverse_wht(s).values;
    }, py::arg("coeffs"));

    m.def("influence", [](const std::vector<double>& values, int i) {
        RealTable t(dim_of(values.size()));
        t.values = values;
        return influence(t, i);
    }, py::arg("values"), py::arg("i"));

    m.def("hamming_dist", [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
        int n = dim_of(a.size());
        TruthTable fa(n), fb(n);
        for (std::size_t i = 0; i < a.size(); ++i) {
            fa.set(i, a[i]);
            fb.set(i, b[i]);
        }
        return hamming_dist(fa, fb);
    }, py::arg("f"), py::arg("g"));

    m.def("khintchine", [](const std::vector<double>& w) {
        return khintchine_constant(WeightVector(w));
    }, py::arg("weights"), "E|w.x| by exact summation");

    m.def("khintchine_exact", [](const std::string& w) {
        return rational_str(khintchine_exact(rationals_from(w)));
    }, py::arg("weights"), "E|w.x| over the rationals, e.g. '1/2,1/2,1/2,1/2'");

    m.def("dist_to_extremal", [](const std::vector<double>& w) {
        return dist_to_extremal(WeightVector(w));
    }, py::arg("unit_weights"));

    m.def("ell_moments", [](const std::vector<double>& w) {
        EllMoments e = ell_moments(WeightVector(w));
        py::dict d;
        d["mean"] = e.mean;
        d["var"] = e.var;
        d["influences"] = e.influences;
        d["weight_ge4"] = e.weight_ge4;
        return d;
    }, py::arg("weights"), "Moments of ell(x) = |w.x|");

    m.def("make_proper", [](const std::vector<double>& w) {
        return make_proper(WeightVector(w)).proper.w;
    }, py::arg("weights"));

    m.def("critical_index", [](const std::vector<double>& w, double tau) -> py::object {
        auto r = critical_index(make_proper(WeightVector(w)).proper, tau);
        if (!r.index) return py::none();
        return py::int_(*r.index);
    }, py::arg("weights"), py::arg("tau"), "1-based; None when infinite");

    m.def("chow", [](const std::vector<double>& w, double theta) {
        ChowParams c = chow_parameters(Ltf(w, theta));
        py::dict d;
        d["mean"] = c.mean();
        std::vector<double> coords(c.n);
        for (int i = 0; i < c.n; ++i) coords[i] = c.coord(i);
        d["coords"] = coords;
        d["w1"] = c.w1();
        return d;
    }, py::arg("weights"), py::arg("theta") = 0.0);

    m.def("balanced_lift_weights", [](const std::vector<double>& w, double theta) {
        return balanced_lift(Ltf(w, theta)).weights.w;
    }, py::arg("weights"), py::arg("theta"),
       "Weights of the zero-threshold lift on n+1 variables");

    m.def("w1", [](const std::vector<double>& w, double theta) {
        return w1_of_ltf(Ltf(w, theta));
    }, py::arg("weights"), py::arg("theta") = 0.0, "Level-1 Fourier weight");

    m.def("mean_sign", &mean_sign, py::arg("theta"));
    m.def("mean_sign_inv", &mean_sign_inv, py::arg("v"));
    m.def("degree1_weight", &degree1_weight, py::arg("v"));

    m.def("mixed_degree1", [](const std::vector<double>& head, double tail_sigma) {
        MixedDegree1 r = mixed_degree1(head, tail_sigma);
        py::dict d;
        d["head"] = r.head;
        d["tail"] = r.tail;
        d["total"] = r.total;
        return d;
    }, py::arg("head"), py::arg("tail_sigma"));

    m.def("enumerate_counts", [](int n, const std::string& mode, const std::string& dir) {
        Catalog c = load_or_build(dir, n, mode_from(mode));
        py::dict d;
        d["classes"] = c.records.size();
        d["full_count"] = c.full_count;
        d["method"] = c.method;
        return d;
    }, py::arg("n"), py::arg("mode"), py::arg("catalog_dir") = "catalogs");

    m.def("gamma_search", [](int k, const std::string& dir) {
        BksReport r = gamma_search(k, dir);
        py::dict d;
        d["k"] = r.k;
        d["gamma"] = r.gamma;
        d["classes"] = r.classes;
        d["full_count"] = r.full_count;
        d["argmin_weights"] = r.argmin.weights;
        d["histogram"] = r.histogram;
        return d;
    }, py::arg("k"), py::arg("catalog_dir") = "catalogs");

    m.def("reduce_w1", [](const std::vector<double>& w, double delta, int m_tail) {
        ReductionTrace t = reduce_w1(Ltf(w, 0.0), delta, m_tail);
        py::dict d;
        d["case"] = t.case_two ? "head-tail" : "junta";
        d["critical_index"] = t.critical ? py::object(py::int_(*t.critical)) : py::none();
        d["cutoff"] = t.cutoff;
        d["w1_input"] = t.w1_input;
        d["w1_output"] = t.w1_output;
        if (t.case_two) {
            d["w1_gaussian_tail"] = t.w1_mixed;
            d["w1_collapsed"] = t.w1_collapsed;
            d["z_coeff"] = t.z_coeff;
        } else {
            d["dist_junta"] = t.dist_junta;
        }
        d["head"] = t.head;
        return d;
    }, py::arg("weights"), py::arg("delta"), py::arg("m"));

    m.def("t_of_w", [](const std::vector<double>& w, double a) {
        TailProb t = t_of_w(WeightVector(w), a);
        py::dict d;
        d["in_prob"] = t.in_prob;
        d["out_prob"] = t.out_prob;
        d["verdict"] = verdict_name(t.verdict);
        return d;
    }, py::arg("weights"), py::arg("a") = 1.0);

    m.def("t_exact", [](const std::string& w, const std::string& a, bool normalize) {
        auto wq = rationals_from(w);
        auto aq = parse_rational(a);
        if (!aq) throw std::invalid_argument("bad radius");
        ExactTailProb t = t_of_w_exact(wq, *aq, normalize);
        py::dict d;
        d["in_prob"] = rational_str(t.in_prob);
        d["out_prob"] = rational_str(t.out_prob);
        d["in_float"] = to_double(t.in_prob);
        d["out_float"] = to_double(t.out_prob);
        return d;
    }, py::arg("weights"), py::arg("a") = std::string("1"), py::arg("normalize") = false);

    m.def("min_norm", [](const std::vector<uint32_t>& points, int m_dim) {
        FeasibilityResult r = min_norm_feasibility(points, m_dim);
        py::dict d;
        d["feasible"] = r.feasible;
        d["separable"] = r.separable;
        if (r.feasible) {
            d["nu_sq"] = rational_str(r.nu_sq);
            d["nu"] = std::sqrt(to_double(r.nu_sq));
            std::vector<double> w(r.witness.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = to_double(r.witness[i]);
            d["witness"] = w;
        }
        return d;
    }, py::arg("points"), py::arg("m"),
       "Min-norm point of {w : w.x >= 1 for x in points}; points are index masks");

    m.def("t_sphere", [](int m_dim, const std::string& dir) {
        TomReport r = t_sphere(m_dim, dir);
        py::dict d;
        d["m"] = r.m;
        d["value"] = rational_str(r.value);
        d["value_float"] = to_double(r.value);
        d["p_size"] = r.p_size;
        d["witness"] = r.witness;
        return d;
    }, py::arg("m"), py::arg("catalog_dir") = "catalogs");

    m.def("reduce_t", [](const std::vector<double>& w, double eps) {
        ReduceTResult r = reduce_dimension_t(WeightVector(w), eps);
        py::dict d;
        d["v"] = r.v.w;
        d["branch"] = r.small_branch ? "small-critical-index" : "large-critical-index";
        d["k"] = r.k_param;
        d["eta"] = r.eta;
        return d;
    }, py::arg("unit_weights"), py::arg("eps"));

    m.def("robust_scan", [](int n_max, double d_min, uint64_t samples, uint64_t seed) {
        RobustScanConfig cfg;
        cfg.n_max = n_max;
        cfg.d_min = d_min;
        cfg.samples = samples;
        cfg.seed = seed;
        RobustScanReport r = robust_scan(cfg);
        py::dict d;
        d["samples_total"] = r.samples_total;
        d["ratios_counted"] = r.ratios_counted;
        d["min_k"] = r.min_k;
        d["min_ratio"] = r.min_ratio;
        d["argmin"] = r.argmin;
        d["khintchine_violations"] = r.khintchine_violations;
        d["koenig_violations"] = r.koenig_violations;
        return d;
    }, py::arg("n_max") = 4, py::arg("d_min") = 0.1, py::arg("samples") = 200,
       py::arg("seed") = 0);

    m.def("verify", [](uint64_t seed, const std::string& dir, const std::string& filter) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.catalog_dir = dir;
        opt.filter = filter;
        py::list out;
        for (const auto& c : run_verification(opt)) {
            py::dict d;
            d["key"] = c.key;
            d["pass"] = c.pass;
            d["detail"] = c.detail;
            out.append(d);
        }
        return out;
    }, py::arg("seed") = 12345, py::arg("catalog_dir") = "catalogs",
       py::arg("filter") = "");
}
