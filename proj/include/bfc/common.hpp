#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfc {

// Hard cap on table dimension: 2^n doubles must fit in desk memory.
inline constexpr int kMaxDim = 28;

inline std::size_t table_size(int n) { return std::size_t{1} << n; }

inline void require_dim(int n, int max_dim = kMaxDim) {
    if (n < 1 || n > max_dim) {
        throw std::invalid_argument("dimension " + std::to_string(n) +
                                    " outside supported range [1," +
                                    std::to_string(max_dim) + "]");
    }
}

// SplitMix64; deterministic across platforms, cheap to seed per work item.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    uint64_t below(uint64_t bound) { return next() % bound; }

    // Marsaglia polar method; no cached spare so streams stay position-independent.
    double normal() {
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }
};

// Derives an independent stream for work item `idx`; merge order never matters.
inline uint64_t mix_seed(uint64_t seed, uint64_t idx) {
    Rng r(seed ^ (0x2545f4914f6cdd1dULL * (idx + 1)));
    return r.next();
}

int resolve_threads(int requested);

// Splits [0,count) into contiguous chunks, one worker per chunk.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace bfc
