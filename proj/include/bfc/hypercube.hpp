#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfc/common.hpp"

namespace bfc {

/// ±1-valued function on {-1,1}^n as a packed bit array.
/// Bit b holds f(x_b) where coordinate i of x_b is +1 iff bit i of b is set
/// (little-endian coordinate packing).
struct TruthTable {
    int n = 0;
    std::vector<uint64_t> bits;

    TruthTable() = default;
    explicit TruthTable(int dim) : n((require_dim(dim), dim)),
                                   bits((table_size(dim) + 63) / 64, 0) {}

    std::size_t size() const { return table_size(n); }

    bool bit(std::size_t b) const { return (bits[b >> 6] >> (b & 63)) & 1; }

    int value(std::size_t b) const { return bit(b) ? 1 : -1; }

    void set(std::size_t b, int v) {
        if (v > 0) {
            bits[b >> 6] |= uint64_t{1} << (b & 63);
        } else {
            bits[b >> 6] &= ~(uint64_t{1} << (b & 63));
        }
    }

    bool operator==(const TruthTable& o) const { return n == o.n && bits == o.bits; }
    bool operator<(const TruthTable& o) const { return bits < o.bits; }
};

/// Real-valued function on the hypercube, same index convention.
struct RealTable {
    int n = 0;
    std::vector<double> values;

    RealTable() = default;
    explicit RealTable(int dim) : n((require_dim(dim), dim)), values(table_size(dim), 0.0) {}
};

/// coeffs[S] = E_x[f(x) x_S], subsets encoded as bit masks.
struct FourierSpectrum {
    int n = 0;
    std::vector<double> coeffs;

    FourierSpectrum() = default;
    explicit FourierSpectrum(int dim) : n(dim), coeffs(table_size(dim), 0.0) {}
};

FourierSpectrum wht(const TruthTable& f);
FourierSpectrum wht(const RealTable& f);
RealTable inverse_wht(const FourierSpectrum& s);
// Requires the spectrum of a ±1 function; reconstruction is bit-exact.
TruthTable inverse_wht_table(const FourierSpectrum& s);

enum class LevelMode { Exact, AtMost, AtLeast };

double degree_weight(const FourierSpectrum& s, int k, LevelMode mode = LevelMode::Exact);
double variance(const FourierSpectrum& s);

// Inf_i via edge counting (±1 tables) / conditional variance (real tables).
double influence(const TruthTable& f, int i);
double influence(const RealTable& f, int i);
double total_influence(const TruthTable& f);
double total_influence(const RealTable& f);
double spectral_influence(const FourierSpectrum& s, int i);

double hamming_dist(const TruthTable& f, const TruthTable& g);

double expectation(const TruthTable& f);

// Binary container: "BFC1" | n:u32 | kind:u8 (0 = packed bits, 1 = f64 LE).
void save_table(const std::string& path, const TruthTable& f);
void save_table(const std::string& path, const RealTable& f);
void save_spectrum(const std::string& path, const FourierSpectrum& s);
TruthTable load_table(const std::string& path);
RealTable load_real_table(const std::string& path);
FourierSpectrum load_spectrum(const std::string& path);

// JSON export, n <= 10 only.
std::string table_json(const TruthTable& f);
std::string spectrum_json(const FourierSpectrum& s);

}  // namespace bfc
