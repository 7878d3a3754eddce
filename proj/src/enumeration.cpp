#include "bfc/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include "bfc/common.hpp"
#include "bfc/exact_lp.hpp"
#include "json.hpp"

namespace bfc {

namespace {

constexpr uint32_t kCatalogVersion = 1;

using TableKey = unsigned __int128;

TableKey table_key(const TruthTable& t) {
    TableKey k = t.bits[0];
    if (t.bits.size() > 1) k |= TableKey(t.bits[1]) << 64;
    return k;
}

TruthTable table_from_key(int n, TableKey k) {
    TruthTable t(n);
    t.bits[0] = uint64_t(k);
    if (t.bits.size() > 1) t.bits[1] = uint64_t(k >> 64);
    return t;
}

int sign_of_dot(const std::vector<int64_t>& w, int64_t theta, uint32_t point, int n) {
    __int128 s = -__int128(theta);
    for (int i = 0; i < n; ++i) {
        s += ((point >> i) & 1) ? __int128(w[i]) : -__int128(w[i]);
    }
    return s >= 0 ? 1 : -1;
}

// Margin LP: f(x)(w·x - theta) >= 1 over the given points, theta pinned to 0
// in zero-threshold mode. Returns integer weights verified to reproduce f.
std::optional<std::pair<std::vector<int64_t>, int64_t>> margin_witness(
    const TruthTable& tt, bool zero_threshold) {
    int n = tt.n;
    int d = zero_threshold ? n : n + 1;
    std::vector<uint32_t> pts;
    if (zero_threshold) {
        // Odd symmetry makes half the constraints redundant.
        uint32_t half = uint32_t(table_size(n)) >> 1;
        for (uint32_t r = 0; r < half; ++r) pts.push_back(r | half);
    } else {
        for (uint32_t b = 0; b < table_size(n); ++b) pts.push_back(b);
    }

    RatMatrix a(pts.size(), RatVector(d, Rational(0)));
    RatVector b(pts.size(), Rational(1));
    for (std::size_t r = 0; r < pts.size(); ++r) {
        int f = tt.value(pts[r]);
        for (int i = 0; i < n; ++i) {
            a[r][i] = Rational(((pts[r] >> i) & 1) ? f : -f);
        }
        if (!zero_threshold) a[r][n] = Rational(-f);
    }

    RatVector point;
    if (!lp_feasible(a, b, &point)) return std::nullopt;

    std::vector<BigInt> scaled = scale_to_integers(point);
    std::vector<int64_t> w(n);
    int64_t theta = 0;
    for (int i = 0; i < n; ++i) {
        auto v = to_int64(scaled[i]);
        if (!v) return std::nullopt;  // overflow guard
        w[i] = *v;
    }
    if (!zero_threshold) {
        auto v = to_int64(scaled[n]);
        if (!v) return std::nullopt;
        theta = *v;
    }
    for (std::size_t bidx = 0; bidx < table_size(n); ++bidx) {
        if (sign_of_dot(w, theta, uint32_t(bidx), n) != tt.value(bidx)) {
            throw std::runtime_error("witness verification failed");
        }
    }
    return std::make_pair(std::move(w), theta);
}

bool is_unate(const TruthTable& t) {
    std::size_t size = t.size();
    for (int i = 0; i < t.n; ++i) {
        std::size_t bit = std::size_t{1} << i;
        bool nondec = true, noninc = true;
        for (std::size_t b = 0; b < size; ++b) {
            if (b & bit) continue;
            bool lo = t.bit(b), hi = t.bit(b | bit);
            if (lo && !hi) nondec = false;
            if (!lo && hi) noninc = false;
            if (!nondec && !noninc) return false;
        }
    }
    return true;
}

// Exact LU of a small rational matrix with row pivoting; shared across the
// 2^d sign vectors of one point subset.
struct RatLU {
    int d = 0;
    RatMatrix lu;
    std::vector<int> perm;
    bool singular = true;

    explicit RatLU(RatMatrix m) : d(int(m.size())), lu(std::move(m)), perm(d) {
        for (int i = 0; i < d; ++i) perm[i] = i;
        for (int col = 0; col < d; ++col) {
            int p = col;
            while (p < d && lu[p][col] == 0) ++p;
            if (p == d) return;
            std::swap(lu[p], lu[col]);
            std::swap(perm[p], perm[col]);
            for (int row = col + 1; row < d; ++row) {
                if (lu[row][col] == 0) continue;
                Rational f = lu[row][col] / lu[col][col];
                lu[row][col] = f;
                for (int k = col + 1; k < d; ++k) lu[row][k] -= f * lu[col][k];
            }
        }
        singular = false;
    }

    RatVector solve(const std::vector<int>& rhs_signs) const {
        RatVector y(d);
        for (int i = 0; i < d; ++i) {
            Rational s(rhs_signs[perm[i]]);
            for (int j = 0; j < i; ++j) s -= lu[i][j] * y[j];
            y[i] = s;
        }
        RatVector x(d);
        for (int i = d - 1; i >= 0; --i) {
            Rational s = y[i];
            for (int j = i + 1; j < d; ++j) s -= lu[i][j] * x[j];
            x[i] = s / lu[i][i];
        }
        return x;
    }
};

struct VertexSpace {
    int n = 0;
    bool zero = false;
    std::vector<uint32_t> pts;  // constraint points (reps only in zero mode)

    int dims() const { return zero ? n : n + 1; }

    Rational margin(const RatVector& w, uint32_t point) const {
        Rational s = 0;
        for (int i = 0; i < n; ++i) {
            if ((point >> i) & 1) {
                s += w[i];
            } else {
                s -= w[i];
            }
        }
        if (!zero) s -= w[n];
        return s;
    }

    RatMatrix rows_for(const std::vector<int>& subset) const {
        int d = dims();
        RatMatrix m(d, RatVector(d, Rational(0)));
        for (int r = 0; r < d; ++r) {
            uint32_t p = pts[subset[r]];
            for (int i = 0; i < n; ++i) m[r][i] = Rational(((p >> i) & 1) ? 1 : -1);
            if (!zero) m[r][n] = Rational(-1);
        }
        return m;
    }

    // Pattern key over pts; full tables are reconstructed later.
    std::optional<uint64_t> pattern_of(const RatVector& w) const {
        uint64_t bits = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational m = margin(w, pts[i]);
            Rational a = abs(m);
            if (a < 1) return std::nullopt;  // not a margin-1 chamber vertex
            if (sgn(m) > 0) bits |= uint64_t{1} << i;
        }
        return bits;
    }
};

TruthTable pattern_to_table(const VertexSpace& space, uint64_t bits) {
    TruthTable t(space.n);
    if (space.zero) {
        uint32_t all = uint32_t(table_size(space.n)) - 1;
        for (std::size_t i = 0; i < space.pts.size(); ++i) {
            int v = (bits >> i) & 1 ? 1 : -1;
            t.set(space.pts[i], v);
            t.set((~space.pts[i]) & all, -v);
        }
    } else {
        for (std::size_t i = 0; i < space.pts.size(); ++i) {
            t.set(space.pts[i], (bits >> i) & 1 ? 1 : -1);
        }
    }
    return t;
}

// Float LU of one subset; shares the screen across the 2^d sign vectors.
// Near-singular systems punt to the exact path (for ±1 systems that means
// exactly singular, since nonsingular integer matrices keep their pivots
// far above the cutoff).
struct FloatLU {
    static constexpr int kMax = 8;
    int d = 0;
    double lu[kMax][kMax];
    int perm[kMax];
    bool healthy = false;

    FloatLU(const VertexSpace& space, const std::vector<int>& subset);

    void solve(const int* rhs_signs, double* x) const {
        double y[kMax];
        for (int i = 0; i < d; ++i) {
            double s = rhs_signs[perm[i]];
            for (int j = 0; j < i; ++j) s -= lu[i][j] * y[j];
            y[i] = s;
        }
        for (int i = d - 1; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < d; ++j) s -= lu[i][j] * x[j];
            x[i] = s / lu[i][i];
        }
    }
};

FloatLU::FloatLU(const VertexSpace& space, const std::vector<int>& subset)
    : d(space.dims()) {
    for (int r = 0; r < d; ++r) {
        perm[r] = r;
        uint32_t p = space.pts[subset[r]];
        for (int i = 0; i < space.n; ++i) lu[r][i] = ((p >> i) & 1) ? 1.0 : -1.0;
        if (!space.zero) lu[r][space.n] = -1.0;
    }
    for (int col = 0; col < d; ++col) {
        int p = col;
        for (int r = col + 1; r < d; ++r) {
            if (std::fabs(lu[r][col]) > std::fabs(lu[p][col])) p = r;
        }
        if (std::fabs(lu[p][col]) < 1e-7) return;
        if (p != col) {
            for (int k = 0; k < d; ++k) std::swap(lu[p][k], lu[col][k]);
            std::swap(perm[p], perm[col]);
        }
        for (int r = col + 1; r < d; ++r) {
            double f = lu[r][col] / lu[col][col];
            lu[r][col] = f;
            for (int k = col + 1; k < d; ++k) lu[r][k] -= f * lu[col][k];
        }
    }
    healthy = true;
}

void enumerate_vertex_worker(const VertexSpace& space, std::size_t first_lo,
                             std::size_t first_hi, std::set<uint64_t>& found) {
    int d = space.dims();
    int n = space.n;
    int npts = int(space.pts.size());
    std::vector<int> subset(d);
    std::vector<int> signs(d);
    double w[FloatLU::kMax];

    auto exact_insert = [&](const RatLU& lu) {
        if (lu.singular) return;
        if (auto pat = space.pattern_of(lu.solve(signs))) found.insert(*pat);
    };

    // Iterate subsets with subset[0] in [first_lo, first_hi).
    for (std::size_t first = first_lo; first < first_hi; ++first) {
        subset[0] = int(first);
        for (int i = 1; i < d; ++i) subset[i] = int(first) + i;
        if (subset[d - 1] >= npts) break;
        for (;;) {
            FloatLU flu(space, subset);
            std::optional<RatLU> rlu;  // factorized lazily, once per subset
            for (uint32_t eps = 0; eps < (uint32_t{1} << d); ++eps) {
                for (int i = 0; i < d; ++i) signs[i] = (eps >> i) & 1 ? 1 : -1;
                if (!flu.healthy) {
                    if (!rlu) rlu.emplace(space.rows_for(subset));
                    exact_insert(*rlu);
                    continue;
                }
                // Screen in floats. The slack is orders of magnitude above
                // the solve error of a healthy system, so rejection never
                // loses a true margin-1 vertex; acceptance is re-proved in
                // exact arithmetic.
                flu.solve(signs.data(), w);
                double scale = 1.0;
                for (int i = 0; i < d; ++i) scale += std::fabs(w[i]);
                double slack = 1e-6 * scale;
                uint64_t pattern = 0;
                bool viable = true;
                for (std::size_t pi = 0; pi < space.pts.size() && viable; ++pi) {
                    uint32_t p = space.pts[pi];
                    double m = 0.0;
                    for (int i = 0; i < n; ++i) m += ((p >> i) & 1) ? w[i] : -w[i];
                    if (!space.zero) m -= w[n];
                    if (std::fabs(m) < 1.0 - slack) {
                        viable = false;
                    } else if (m > 0) {
                        pattern |= uint64_t{1} << pi;
                    }
                }
                if (!viable || found.count(pattern)) continue;
                if (!rlu) rlu.emplace(space.rows_for(subset));
                exact_insert(*rlu);
            }
            // next combination with fixed subset[0]
            int i = d - 1;
            while (i >= 1 && subset[i] == npts - d + i) --i;
            if (i < 1) break;
            ++subset[i];
            for (int j = i + 1; j < d; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
}

}  // namespace

const char* mode_name(CatalogMode m) {
    return m == CatalogMode::AllLtfs ? "all" : "zero";
}

std::optional<std::pair<std::vector<int64_t>, int64_t>> separability_witness(
    const TruthTable& tt, bool zero_threshold) {
    if (tt.n > 6) throw std::invalid_argument("separability test limited to n <= 6");
    if (zero_threshold) {
        // Nondegenerate zero-threshold functions are odd; cheap reject.
        uint32_t all = uint32_t(table_size(tt.n)) - 1;
        for (uint32_t b = 0; b < table_size(tt.n); ++b) {
            if (tt.value(b) != -tt.value((~b) & all)) return std::nullopt;
        }
    }
    return margin_witness(tt, zero_threshold);
}

std::vector<TruthTable> enumerate_scan(int n, CatalogMode mode, int threads) {
    bool zero = mode == CatalogMode::ZeroThreshold;
    if ((!zero && n > 4) || (zero && n > 5)) {
        throw std::invalid_argument("full scan out of reach at this dimension");
    }
    require_dim(n);
    std::size_t assignments = zero ? table_size(n) / 2 : table_size(n);
    std::size_t space = std::size_t{1} << assignments;

    std::mutex mu;
    std::vector<TruthTable> out;
    parallel_for(space, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<TruthTable> local;
        for (std::size_t mask = lo; mask < hi; ++mask) {
            TruthTable t(n);
            if (zero) {
                uint32_t half = uint32_t(table_size(n)) >> 1;
                uint32_t all = uint32_t(table_size(n)) - 1;
                for (uint32_t r = 0; r < half; ++r) {
                    int v = (mask >> r) & 1 ? 1 : -1;
                    t.set(r | half, v);
                    t.set((~(r | half)) & all, -v);
                }
            } else {
                t.bits[0] = mask;
            }
            if (!is_unate(t)) continue;
            if (margin_witness(t, zero)) local.push_back(std::move(t));
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& t : local) out.push_back(std::move(t));
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TruthTable> enumerate_vertex(int n, CatalogMode mode, int threads) {
    bool zero = mode == CatalogMode::ZeroThreshold;
    require_dim(n, zero ? 7 : 6);

    VertexSpace space;
    space.n = n;
    space.zero = zero;
    if (zero) {
        uint32_t half = uint32_t(table_size(n)) >> 1;
        for (uint32_t r = 0; r < half; ++r) space.pts.push_back(r | half);
    } else {
        for (uint32_t b = 0; b < table_size(n); ++b) space.pts.push_back(b);
    }

    int d = space.dims();
    if (int(space.pts.size()) < d) {
        throw std::invalid_argument("not enough constraint points");
    }

    std::size_t firsts = space.pts.size() - d + 1;
    std::mutex mu;
    std::set<uint64_t> found;
    parallel_for(firsts, threads, [&](std::size_t lo, std::size_t hi) {
        std::set<uint64_t> local;
        enumerate_vertex_worker(space, lo, hi, local);
        std::lock_guard<std::mutex> lock(mu);
        found.insert(local.begin(), local.end());
    });

    std::vector<TruthTable> out;
    out.reserve(found.size());
    for (uint64_t pat : found) out.push_back(pattern_to_table(space, pat));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Index maps of all variable permutations, computed once per dimension.
// src index under (perm, negmask): bit i of src = bit perm[i] of b, then
// xor with negmask.
const std::vector<std::vector<uint32_t>>& perm_maps(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<uint32_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::vector<uint32_t>> maps;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        std::vector<uint32_t> map(table_size(n));
        for (uint32_t b = 0; b < table_size(n); ++b) {
            uint32_t src = 0;
            for (int i = 0; i < n; ++i) {
                src |= ((b >> perm[i]) & 1u) << i;
            }
            map[b] = src;
        }
        maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cache.emplace(n, std::move(maps)).first->second;
}

TableKey transformed_key(const TruthTable& f, const std::vector<uint32_t>& perm_map,
                         uint32_t negmask) {
    TableKey k = 0;
    std::size_t size = f.size();
    for (std::size_t b = 0; b < size; ++b) {
        if (f.bit(perm_map[b] ^ negmask)) k |= TableKey(1) << b;
    }
    return k;
}

// Full orbit of one table; returns the lexicographic minimum and fills the
// member set.
TableKey expand_orbit(const TruthTable& f, std::set<TableKey>& members) {
    TableKey best = table_key(f);
    for (const auto& map : perm_maps(f.n)) {
        for (uint32_t neg = 0; neg < table_size(f.n); ++neg) {
            TableKey k = transformed_key(f, map, neg);
            members.insert(k);
            if (k < best) best = k;
        }
    }
    return best;
}

}  // namespace

CanonicalResult canonicalize(const TruthTable& f) {
    if (f.n > 7) throw std::invalid_argument("canonicalization limited to n <= 7");
    std::set<TableKey> members;
    TableKey best = expand_orbit(f, members);
    CanonicalResult r;
    r.table = table_from_key(f.n, best);
    r.orbit = members.size();
    return r;
}

TruthTable canonical_form(const TruthTable& f) { return canonicalize(f).table; }

namespace {

LtfRecord make_record(const TruthTable& canonical, uint64_t orbit, bool zero) {
    LtfRecord rec;
    rec.table = canonical;
    rec.orbit = orbit;
    auto witness = margin_witness(canonical, zero);
    if (!witness) throw std::runtime_error("catalog record lost its witness");
    rec.weights = witness->first;
    rec.threshold = witness->second;
    rec.chow = chow_parameters(canonical);
    rec.w1 = rec.chow.w1();
    return rec;
}

uint64_t fnv1a(const void* data, std::size_t len, uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t catalog_checksum(const Catalog& c) {
    uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(&kCatalogVersion, sizeof kCatalogVersion, h);
    h = fnv1a(&c.n, sizeof c.n, h);
    uint8_t mode = uint8_t(c.mode);
    h = fnv1a(&mode, 1, h);
    h = fnv1a(&c.full_count, sizeof c.full_count, h);
    for (const auto& r : c.records) {
        h = fnv1a(r.table.bits.data(), r.table.bits.size() * 8, h);
        h = fnv1a(r.weights.data(), r.weights.size() * 8, h);
        h = fnv1a(&r.threshold, 8, h);
        h = fnv1a(&r.orbit, 8, h);
    }
    return h;
}

}  // namespace

Catalog enumerate_ltfs(int n, CatalogMode mode, int threads) {
    bool zero = mode == CatalogMode::ZeroThreshold;
    require_dim(n, zero ? 7 : 6);

    std::vector<TruthTable> tables = enumerate_vertex(n, mode, threads);
    std::string method = "vertex";
    bool scan_applies = zero ? n <= 5 : n <= 4;
    if (scan_applies) {
        std::vector<TruthTable> scanned = enumerate_scan(n, mode, threads);
        if (scanned != tables) {
            // Counts from two independent strategies must match exactly.
            throw std::runtime_error("enumeration strategies disagree at n=" +
                                     std::to_string(n));
        }
        method = "scan+vertex";
    }

    // Group the raw functions into symmetry classes by expanding one orbit
    // per class; the raw set must be closed under the group, so a member
    // outside it means the enumeration is incomplete.
    std::set<TableKey> raw;
    for (const auto& t : tables) raw.insert(table_key(t));

    std::map<TableKey, uint64_t> classes;  // canonical key -> orbit size
    std::set<TableKey> visited;
    for (const auto& t : tables) {
        if (visited.count(table_key(t))) continue;
        std::set<TableKey> members;
        TableKey canon = expand_orbit(t, members);
        for (TableKey k : members) {
            if (!raw.count(k)) {
                throw std::runtime_error("orbit escapes the enumeration; incomplete");
            }
        }
        visited.insert(members.begin(), members.end());
        classes[canon] = members.size();
    }

    Catalog cat;
    cat.n = n;
    cat.mode = mode;
    cat.method = method;
    cat.full_count = tables.size();
    for (auto& [key, orbit] : classes) {
        cat.records.push_back(make_record(table_from_key(n, key), orbit, zero));
    }
    uint64_t total = 0;
    for (const auto& r : cat.records) total += r.orbit;
    if (total != cat.full_count) {
        throw std::runtime_error("orbit sizes fail to cover the enumeration");
    }
    cat.checksum = catalog_checksum(cat);
    return cat;
}

std::string catalog_path(const std::string& dir, int n, CatalogMode mode) {
    return dir + "/ltf-n" + std::to_string(n) + "-" + mode_name(mode) + ".cat";
}

void save_catalog(const std::string& path, const Catalog& c) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write("LTFC", 4);
    auto put32 = [&](uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put64 = [&](uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put32(kCatalogVersion);
    put32(uint32_t(c.n));
    uint8_t mode = uint8_t(c.mode);
    out.write(reinterpret_cast<const char*>(&mode), 1);
    put64(c.records.size());
    put64(c.full_count);
    put64(c.checksum);
    for (const auto& r : c.records) {
        out.write(reinterpret_cast<const char*>(r.table.bits.data()),
                  std::streamsize(r.table.bits.size() * 8));
        out.write(reinterpret_cast<const char*>(r.weights.data()),
                  std::streamsize(r.weights.size() * 8));
        put64(uint64_t(r.threshold));
        put64(uint64_t(r.orbit));
    }
}

std::optional<Catalog> load_catalog(const std::string& path, int n, CatalogMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "LTFC", 4) != 0) return std::nullopt;
    auto get32 = [&]() { uint32_t v = 0; in.read(reinterpret_cast<char*>(&v), 4); return v; };
    auto get64 = [&]() { uint64_t v = 0; in.read(reinterpret_cast<char*>(&v), 8); return v; };
    if (get32() != kCatalogVersion) return std::nullopt;
    if (int(get32()) != n) return std::nullopt;
    uint8_t mode_byte = 0;
    in.read(reinterpret_cast<char*>(&mode_byte), 1);
    if (mode_byte != uint8_t(mode)) return std::nullopt;
    uint64_t count = get64();
    Catalog cat;
    cat.n = n;
    cat.mode = mode;
    cat.full_count = get64();
    cat.checksum = get64();
    cat.method = "cache";
    for (uint64_t i = 0; i < count && in; ++i) {
        LtfRecord r;
        r.table = TruthTable(n);
        in.read(reinterpret_cast<char*>(r.table.bits.data()),
                std::streamsize(r.table.bits.size() * 8));
        r.weights.resize(n);
        in.read(reinterpret_cast<char*>(r.weights.data()), std::streamsize(n * 8));
        r.threshold = int64_t(get64());
        r.orbit = get64();
        if (!in) return std::nullopt;
        r.chow = chow_parameters(r.table);
        r.w1 = r.chow.w1();
        cat.records.push_back(std::move(r));
    }
    if (!in) return std::nullopt;
    if (catalog_checksum(cat) != cat.checksum) return std::nullopt;  // stale cache
    // Witnesses are not trusted from disk: re-verify exactly.
    for (const auto& r : cat.records) {
        for (std::size_t b = 0; b < table_size(n); ++b) {
            if (sign_of_dot(r.weights, r.threshold, uint32_t(b), n) != r.table.value(b)) {
                return std::nullopt;
            }
        }
    }
    return cat;
}

Catalog load_or_build(const std::string& dir, int n, CatalogMode mode, int threads) {
    std::string path = catalog_path(dir, n, mode);
    if (auto cached = load_catalog(path, n, mode)) return *cached;
    Catalog cat = enumerate_ltfs(n, mode, threads);
    save_catalog(path, cat);
    return cat;
}

std::string catalog_json(const Catalog& c) {
    if (c.n > 4) throw std::invalid_argument("catalog JSON export limited to n <= 4");
    nlohmann::ordered_json j;
    j["schema"] = "bfc.catalog.v1";
    j["n"] = c.n;
    j["mode"] = mode_name(c.mode);
    j["classes"] = c.records.size();
    j["full_count"] = c.full_count;
    j["method"] = c.method;
    auto recs = nlohmann::ordered_json::array();
    for (const auto& r : c.records) {
        nlohmann::ordered_json rj;
        std::vector<int> vals(r.table.size());
        for (std::size_t b = 0; b < r.table.size(); ++b) vals[b] = r.table.value(b);
        rj["table"] = vals;
        rj["weights"] = r.weights;
        rj["threshold"] = r.threshold;
        rj["w1"] = r.w1;
        rj["orbit"] = r.orbit;
        recs.push_back(std::move(rj));
    }
    j["records"] = std::move(recs);
    return j.dump(2);
}

}  // namespace bfc
