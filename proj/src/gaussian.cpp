#include "bfc/gaussian.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bfc/common.hpp"

namespace bfc {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
}  // namespace

double normal_pdf(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double normal_cdf(double t) { return 0.5 * std::erfc(-t / kSqrt2); }

double mean_sign(double theta) {
    // 1 - 2*Phi(theta), written through erfc to keep relative accuracy in
    // both tails.
    return -std::erf(theta / kSqrt2);
}

double mean_sign_inv(double v) {
    if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("value outside [-1,1]");
    if (v == 1.0) return -std::numeric_limits<double>::infinity();
    if (v == -1.0) return std::numeric_limits<double>::infinity();
    double lo = -40.0, hi = 40.0;  // mean_sign(∓40) pins the full double range
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mean_sign(mid) > v) {
            lo = mid;  // decreasing function
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    double deriv = -2.0 * normal_pdf(x);
    if (std::fabs(deriv) > 1e-300) {
        x -= (mean_sign(x) - v) / deriv;
    }
    return x;
}

double degree1_weight(double v) {
    if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("value outside [-1,1]");
    if (v == 1.0 || v == -1.0) return 0.0;
    double t = mean_sign_inv(v);
    double p = 2.0 * normal_pdf(t);
    return p * p;
}

double gauss_mean_sign(const std::vector<double>& w, double theta) {
    double s = 0.0;
    for (double v : w) s += v * v;
    double norm = std::sqrt(s);
    if (norm == 0.0) return theta <= 0.0 ? 1.0 : -1.0;
    return mean_sign(theta / norm);
}

namespace {

// 20-point Gauss-Legendre nodes/weights on [-1,1].
constexpr int kGlPoints = 20;
constexpr double kGlNode[kGlPoints] = {
    -0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
    -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154195,
    -0.2277858511416451, -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
    0.3737060887154195,  0.5108670019508271,  0.6360536807265150,  0.7463319064601508,
    0.8391169718222188,  0.9122344282513259,  0.9639719272779138,  0.9931285991850949};
constexpr double kGlWeight[kGlPoints] = {
    0.0176140071391521, 0.0406014298003869, 0.0626720483341091, 0.0832767415767048,
    0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183820,
    0.1491729864726037, 0.1527533871307258, 0.1527533871307258, 0.1491729864726037,
    0.1420961093183820, 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};

}  // namespace

double gauss_quad(const std::function<double(double)>& f) {
    // Composite panels over [-8,8]; the N(0,1) weight leaves < 1e-15 mass
    // outside.
    constexpr int kPanels = 16;
    constexpr double kLo = -8.0, kHi = 8.0;
    double width = (kHi - kLo) / kPanels;
    double acc = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        double a = kLo + p * width;
        double mid = a + 0.5 * width;
        double half = 0.5 * width;
        for (int i = 0; i < kGlPoints; ++i) {
            double x = mid + half * kGlNode[i];
            acc += half * kGlWeight[i] * f(x) * normal_pdf(x);
        }
    }
    return acc;
}

MixedDegree1 mixed_degree1(const std::vector<double>& head_w, double tail_sigma) {
    int h = int(head_w.size());
    if (h > 24) throw std::invalid_argument("head too large");
    if (!(tail_sigma > 0.0)) throw std::invalid_argument("tail sigma must be positive");

    MixedDegree1 out;
    out.head.assign(h, 0.0);
    std::size_t size = std::size_t{1} << h;

    double a = 0.0;
    for (double v : head_w) a -= v;
    std::size_t g = 0;
    double tail_acc = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        if (k) {
            int i = std::countr_zero(k);
            std::size_t bit = std::size_t{1} << i;
            g ^= bit;
            a += (g & bit) ? 2.0 * head_w[i] : -2.0 * head_w[i];
        }
        // E over the Gaussian tail of sign(a + tail): mean_sign(-a/sigma);
        // correlation with the standardized tail variable: 2 phi(a/sigma).
        double cond_mean = mean_sign(-a / tail_sigma);
        for (int i = 0; i < h; ++i) {
            out.head[i] += ((g >> i) & 1) ? cond_mean : -cond_mean;
        }
        tail_acc += 2.0 * normal_pdf(a / tail_sigma);
    }
    double scale = 1.0 / double(size);
    out.total = 0.0;
    for (int i = 0; i < h; ++i) {
        out.head[i] *= scale;
        out.total += out.head[i] * out.head[i];
    }
    out.tail = tail_acc * scale;
    out.total += out.tail * out.tail;
    return out;
}

MixedDegree1Split mixed_degree1_split(const std::vector<double>& head_w,
                                      const std::vector<double>& tail_w) {
    int h = int(head_w.size());
    int t = int(tail_w.size());
    if (h > 24) throw std::invalid_argument("head too large");
    if (t < 1) throw std::invalid_argument("empty tail");
    double tail_sq = 0.0;
    for (double v : tail_w) tail_sq += v * v;
    double tail_norm = std::sqrt(tail_sq);
    if (!(tail_norm > 0.0)) throw std::invalid_argument("tail norm must be positive");

    MixedDegree1Split out;
    out.head.assign(h, 0.0);
    out.tails.assign(t, 0.0);
    std::size_t size = std::size_t{1} << h;

    std::vector<double> head_vals(size);
    {
        double a = 0.0;
        for (double v : head_w) a -= v;
        std::size_t g = 0;
        for (std::size_t k = 0; k < size; ++k) {
            if (k) {
                int i = std::countr_zero(k);
                std::size_t bit = std::size_t{1} << i;
                g ^= bit;
                a += (g & bit) ? 2.0 * head_w[i] : -2.0 * head_w[i];
            }
            head_vals[g] = a;
            double cond_mean = mean_sign(-a / tail_norm);
            for (int i = 0; i < h; ++i) {
                out.head[i] += ((g >> i) & 1) ? cond_mean : -cond_mean;
            }
        }
        double scale = 1.0 / double(size);
        for (int i = 0; i < h; ++i) out.head[i] *= scale;
    }

    // Tail coordinate j: condition on its own Gaussian g and integrate the
    // conditional mean of the remaining tail by quadrature.
    double scale = 1.0 / double(size);
    for (int j = 0; j < t; ++j) {
        double rest = tail_sq - tail_w[j] * tail_w[j];
        double s = rest > 0.0 ? std::sqrt(rest) : 0.0;
        double acc = 0.0;
        if (s < 1e-12) {
            // Lone tail coordinate: closed form.
            double sign = tail_w[j] < 0.0 ? -1.0 : 1.0;
            for (std::size_t b = 0; b < size; ++b) {
                acc += sign * 2.0 * normal_pdf(head_vals[b] / std::fabs(tail_w[j]));
            }
        } else {
            for (std::size_t b = 0; b < size; ++b) {
                double a = head_vals[b];
                double wj = tail_w[j];
                acc += gauss_quad([a, wj, s](double g) {
                    return g * mean_sign(-(a + wj * g) / s);
                });
            }
        }
        out.tails[j] = acc * scale;
    }

    out.total = 0.0;
    for (double v : out.head) out.total += v * v;
    for (double v : out.tails) out.total += v * v;
    return out;
}

}  // namespace bfc
