#include "bfc/hypercube.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace bfc {

namespace {

// In-place transform with butterflies (a,b) -> (a+b, b-a) per coordinate.
// With the little-endian point convention this yields, after dividing by
// 2^n, coeffs[S] = E_x[f(x) x_S] directly.
template <class T>
void forward_butterflies(std::vector<T>& v) {
    std::size_t size = v.size();
    for (std::size_t stride = 1; stride < size; stride <<= 1) {
        for (std::size_t block = 0; block < size; block += stride << 1) {
            for (std::size_t j = block; j < block + stride; ++j) {
                T a = v[j];
                T b = v[j + stride];
                v[j] = a + b;
                v[j + stride] = b - a;
            }
        }
    }
}

// Transposed butterflies (a,b) -> (a-b, a+b); exact inverse of the forward
// pass up to the 2^n normalization.
template <class T>
void inverse_butterflies(std::vector<T>& v) {
    std::size_t size = v.size();
    for (std::size_t stride = 1; stride < size; stride <<= 1) {
        for (std::size_t block = 0; block < size; block += stride << 1) {
            for (std::size_t j = block; j < block + stride; ++j) {
                T a = v[j];
                T b = v[j + stride];
                v[j] = a - b;
                v[j + stride] = a + b;
            }
        }
    }
}

}  // namespace

FourierSpectrum wht(const TruthTable& f) {
    require_dim(f.n);
    std::size_t size = f.size();
    // Integer accumulation keeps ±1 spectra exact; the final division by 2^n
    // is a dyadic shift, representable whenever n <= 28.
    std::vector<int64_t> buf(size);
    for (std::size_t b = 0; b < size; ++b) buf[b] = f.value(b);
    forward_butterflies(buf);
    FourierSpectrum s(f.n);
    double scale = 1.0 / double(size);
    for (std::size_t i = 0; i < size; ++i) s.coeffs[i] = double(buf[i]) * scale;
    return s;
}

FourierSpectrum wht(const RealTable& f) {
    require_dim(f.n);
    std::vector<double> buf(f.values);
    forward_butterflies(buf);
    FourierSpectrum s(f.n);
    double scale = 1.0 / double(f.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) s.coeffs[i] = buf[i] * scale;
    return s;
}

RealTable inverse_wht(const FourierSpectrum& s) {
    require_dim(s.n);
    RealTable t(s.n);
    t.values = s.coeffs;
    inverse_butterflies(t.values);
    return t;
}

TruthTable inverse_wht_table(const FourierSpectrum& s) {
    require_dim(s.n);
    std::size_t size = table_size(s.n);
    // Recover the integer transform (coeff * 2^n) and invert over int64 so the
    // round trip stays exact even where double intermediates would not.
    std::vector<int64_t> buf(size);
    double scale = double(size);
    for (std::size_t i = 0; i < size; ++i) {
        double v = s.coeffs[i] * scale;
        int64_t r = int64_t(std::llround(v));
        if (std::fabs(v - double(r)) > 1e-6) {
            throw std::invalid_argument("spectrum is not that of a ±1-valued table");
        }
        buf[i] = r;
    }
    inverse_butterflies(buf);
    TruthTable t(s.n);
    for (std::size_t b = 0; b < size; ++b) {
        int64_t v = buf[b];
        if (v != int64_t(size) && v != -int64_t(size)) {
            throw std::invalid_argument("spectrum is not that of a ±1-valued table");
        }
        t.set(b, v > 0 ? 1 : -1);
    }
    return t;
}

double degree_weight(const FourierSpectrum& s, int k, LevelMode mode) {
    if (k < 0 || k > s.n) throw std::invalid_argument("level out of range");
    double acc = 0.0;
    std::size_t size = table_size(s.n);
    for (std::size_t mask = 0; mask < size; ++mask) {
        int level = std::popcount(uint64_t(mask));
        bool take = mode == LevelMode::Exact   ? level == k
                    : mode == LevelMode::AtMost ? level <= k
                                                : level >= k;
        if (take) acc += s.coeffs[mask] * s.coeffs[mask];
    }
    return acc;
}

double variance(const FourierSpectrum& s) {
    double acc = 0.0;
    for (std::size_t mask = 1; mask < s.coeffs.size(); ++mask) {
        acc += s.coeffs[mask] * s.coeffs[mask];
    }
    return acc;
}

double influence(const TruthTable& f, int i) {
    if (i < 0 || i >= f.n) throw std::invalid_argument("coordinate out of range");
    std::size_t size = f.size();
    std::size_t step = std::size_t{1} << i;
    uint64_t flips = 0;
    for (std::size_t base = 0; base < size; base += step << 1) {
        for (std::size_t j = base; j < base + step; ++j) {
            flips += f.bit(j) != f.bit(j + step);
        }
    }
    return double(flips) / double(size >> 1);
}

double influence(const RealTable& f, int i) {
    if (i < 0 || i >= f.n) throw std::invalid_argument("coordinate out of range");
    std::size_t size = f.values.size();
    std::size_t step = std::size_t{1} << i;
    double acc = 0.0;
    for (std::size_t base = 0; base < size; base += step << 1) {
        for (std::size_t j = base; j < base + step; ++j) {
            double d = f.values[j + step] - f.values[j];
            acc += 0.25 * d * d;
        }
    }
    return acc / double(size >> 1);
}

double total_influence(const TruthTable& f) {
    double acc = 0.0;
    for (int i = 0; i < f.n; ++i) acc += influence(f, i);
    return acc;
}

double total_influence(const RealTable& f) {
    double acc = 0.0;
    for (int i = 0; i < f.n; ++i) acc += influence(f, i);
    return acc;
}

double spectral_influence(const FourierSpectrum& s, int i) {
    if (i < 0 || i >= s.n) throw std::invalid_argument("coordinate out of range");
    double acc = 0.0;
    std::size_t size = table_size(s.n);
    for (std::size_t mask = 0; mask < size; ++mask) {
        if ((mask >> i) & 1) acc += s.coeffs[mask] * s.coeffs[mask];
    }
    return acc;
}

double hamming_dist(const TruthTable& f, const TruthTable& g) {
    if (f.n != g.n) throw std::invalid_argument("dimension mismatch");
    uint64_t diff = 0;
    for (std::size_t w = 0; w < f.bits.size(); ++w) {
        uint64_t x = f.bits[w] ^ g.bits[w];
        if (w + 1 == f.bits.size() && f.size() < 64) {
            x &= (uint64_t{1} << f.size()) - 1;
        }
        diff += std::popcount(x);
    }
    return double(diff) / double(f.size());
}

double expectation(const TruthTable& f) {
    uint64_t ones = 0;
    for (std::size_t w = 0; w < f.bits.size(); ++w) {
        uint64_t x = f.bits[w];
        if (w + 1 == f.bits.size() && f.size() < 64) {
            x &= (uint64_t{1} << f.size()) - 1;
        }
        ones += std::popcount(x);
    }
    return (2.0 * double(ones) - double(f.size())) / double(f.size());
}

namespace {

constexpr char kMagic[4] = {'B', 'F', 'C', '1'};

void write_header(std::ofstream& out, int n, uint8_t kind) {
    out.write(kMagic, 4);
    uint32_t dim = uint32_t(n);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    out.write(reinterpret_cast<const char*>(&kind), 1);
}

std::pair<int, uint8_t> read_header(std::ifstream& in, const std::string& path) {
    char magic[4];
    uint32_t dim = 0;
    uint8_t kind = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&dim), 4);
    in.read(reinterpret_cast<char*>(&kind), 1);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("not a table container: " + path);
    }
    require_dim(int(dim));
    return {int(dim), kind};
}

}  // namespace

void save_table(const std::string& path, const TruthTable& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_header(out, f.n, 0);
    std::size_t bytes = (f.size() + 7) / 8;
    out.write(reinterpret_cast<const char*>(f.bits.data()), std::streamsize(bytes));
}

void save_table(const std::string& path, const RealTable& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_header(out, f.n, 1);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              std::streamsize(f.values.size() * sizeof(double)));
}

void save_spectrum(const std::string& path, const FourierSpectrum& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_header(out, s.n, 1);
    out.write(reinterpret_cast<const char*>(s.coeffs.data()),
              std::streamsize(s.coeffs.size() * sizeof(double)));
}

TruthTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto [n, kind] = read_header(in, path);
    if (kind != 0) throw std::runtime_error("expected a bit table: " + path);
    TruthTable f(n);
    std::size_t bytes = (f.size() + 7) / 8;
    in.read(reinterpret_cast<char*>(f.bits.data()), std::streamsize(bytes));
    if (!in) throw std::runtime_error("truncated table: " + path);
    return f;
}

RealTable load_real_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto [n, kind] = read_header(in, path);
    if (kind != 1) throw std::runtime_error("expected a real table: " + path);
    RealTable f(n);
    in.read(reinterpret_cast<char*>(f.values.data()),
            std::streamsize(f.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated table: " + path);
    return f;
}

FourierSpectrum load_spectrum(const std::string& path) {
    RealTable t = load_real_table(path);
    FourierSpectrum s(t.n);
    s.coeffs = std::move(t.values);
    return s;
}

std::string table_json(const TruthTable& f) {
    if (f.n > 10) throw std::invalid_argument("JSON export limited to n <= 10");
    nlohmann::ordered_json j;
    j["schema"] = "bfc.table.v1";
    j["n"] = f.n;
    std::vector<int> vals(f.size());
    for (std::size_t b = 0; b < f.size(); ++b) vals[b] = f.value(b);
    j["values"] = vals;
    return j.dump();
}

std::string spectrum_json(const FourierSpectrum& s) {
    if (s.n > 10) throw std::invalid_argument("JSON export limited to n <= 10");
    nlohmann::ordered_json j;
    j["schema"] = "bfc.spectrum.v1";
    j["n"] = s.n;
    j["coeffs"] = s.coeffs;
    return j.dump();
}

}  // namespace bfc
