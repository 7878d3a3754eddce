#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfc/ltf.hpp"

namespace bfc {

enum class CatalogMode : uint8_t { AllLtfs = 0, ZeroThreshold = 1 };

const char* mode_name(CatalogMode m);

/// Canonical representative of one symmetry class of threshold functions.
struct LtfRecord {
    TruthTable table;               // canonical under perms x input negations
    std::vector<int64_t> weights;   // integer witness, margin >= 1 after scaling
    int64_t threshold = 0;
    ChowParams chow;
    double w1 = 0.0;                // level-1 Fourier weight (exact dyadic)
    uint64_t orbit = 0;             // class size under the symmetry group
};

struct Catalog {
    int n = 0;
    CatalogMode mode = CatalogMode::AllLtfs;
    std::vector<LtfRecord> records;  // sorted by canonical table
    uint64_t full_count = 0;         // sum of orbit sizes
    std::string method;              // generation tag, e.g. "scan+vertex"
    uint64_t checksum = 0;
};

// Exact-rational feasibility of f(x)(w·x - theta) >= 1; witness scaled to
// integers and re-verified. zero_threshold pins theta = 0. n <= 6.
std::optional<std::pair<std::vector<int64_t>, int64_t>> separability_witness(
    const TruthTable& tt, bool zero_threshold = false);

// Full enumeration; strategies cross-checked where both apply, disagreement
// is a hard failure. AllLtfs: n <= 6; ZeroThreshold (nondegenerate): n <= 7.
Catalog enumerate_ltfs(int n, CatalogMode mode, int threads = 0);

// Strategy A: scan every Boolean function, keep the separable ones.
// AllLtfs n <= 4, ZeroThreshold n <= 5. Tables returned raw (not canonical).
std::vector<TruthTable> enumerate_scan(int n, CatalogMode mode, int threads = 0);

// Strategy B: candidate-vertex walk of the margin-1 arrangement.
std::vector<TruthTable> enumerate_vertex(int n, CatalogMode mode, int threads = 0);

struct CanonicalResult {
    TruthTable table;
    uint64_t orbit = 0;
};

// Lexicographically minimal table over variable permutations x input
// negations; idempotent. n <= 7.
CanonicalResult canonicalize(const TruthTable& f);
TruthTable canonical_form(const TruthTable& f);

// Disk cache: "LTFC" header keyed by (n, mode, format version) + checksum;
// a stale or corrupt file is rebuilt, never trusted.
void save_catalog(const std::string& path, const Catalog& c);
std::optional<Catalog> load_catalog(const std::string& path, int n, CatalogMode mode);
Catalog load_or_build(const std::string& dir, int n, CatalogMode mode, int threads = 0);
std::string catalog_path(const std::string& dir, int n, CatalogMode mode);

std::string catalog_json(const Catalog& c);  // n <= 4

}  // namespace bfc
