#pragma once
// Group-testing design over a binary prefix tree. Each tree level gets a
// bank of C*k tests and every node of that level is hashed into one of
// them; a final set of leaf-trimming banks re-hashes the leaves. The
// decoder grows the at-most-k candidate prefixes level by level, keeping
// children whose test fired, then trims leaves against every bank.

#include <cstdint>
#include <vector>

#include "edocs/core.hpp"

namespace edocs {

struct FbsDesign {
    int n = 0;  // leaves; power of two
    int k = 0;  // design sparsity; power of two, 2 <= k < n
    int c = 0;  // tests per level = c * k
    int log2n = 0;
    int log2k = 0;
    int tests_per_level = 0;
    std::uint64_t seed = 0;

    int grow_levels() const { return log2n - log2k; }   // prefix lengths log2k+1 .. log2n
    int trim_groups() const { return log2k; }
    int total_tests() const { return tests_per_level * log2n; }

    /// Test holding `node` (a prefix of length `level`).
    int grow_test(int level, std::uint64_t node) const;
    /// Test holding `leaf` in trimming bank `group`.
    int trim_test(int group, std::uint64_t leaf) const;
};

FbsDesign build_fbs(int n, int k, int c, std::uint64_t seed);

/// Leaves covered by one test, ascending. Linear in the node count of the
/// test's level; meant for materialization and cross-checks, not decoding.
std::vector<int> row_support(const FbsDesign& d, int test);

/// Full 0/1 test-by-item matrix; every column has weight log2 n.
BinaryDesign materialize_design(const FbsDesign& d);

struct GtResult {
    std::vector<int> positives;
    bool failed = false;        // candidate set exceeded cap * k; positives empty
    int candidates_peak = 0;
    std::uint64_t visits = 0;   // candidates processed, bounded by cap * k * log2 n
};

GtResult fbs_decode(const FbsDesign& d, const MeasurementBits& y, int cap = 8);

}  // namespace edocs
