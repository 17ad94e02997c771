#pragma once
// Fixed-signal ("for each") scheme: the binary splitting design magnified
// with short real-valued blocks. Each test becomes a k_alpha-row block whose
// nonzero columns sit on the test's items; any up-to-k_alpha columns of a
// block are linearly independent, so a test carrying at most k_alpha signal
// entries can never measure to all-zeros. The row count k_alpha is chosen so
// an overloaded test is unlikely under uniform hashing.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edocs/core.hpp"
#include "edocs/splitting.hpp"

namespace edocs {

enum class AstimKind { Gaussian, Hilbert };

/// Block with the given nonzero column set. Gaussian entries are keyed by
/// (seed, row, item) so they can be re-derived entry-wise; Hilbert entries
/// are 1 / (row + position + 1), deterministic regardless of seed.
AstimBlock build_astim(std::vector<int> support, int rows, std::uint64_t seed, AstimKind kind);

struct EeScheme {
    int n = 0;           // signal dimension as requested
    int k = 0;
    int n_pad = 0;       // rounded up to powers of two for the tree design
    int k_pad = 0;
    double alpha = 0.0;
    int c = 16;
    int k_alpha = 0;
    std::uint64_t seed = 0;
    bool regime_ok = true;  // k large enough relative to (ln n)^(1/(alpha-1))
    FbsDesign fbs;

    int test_count() const { return fbs.total_tests(); }
    int total_measurements() const { return k_alpha * fbs.total_tests(); }

    std::uint64_t block_seed(int test) const;
    /// Block for one test, re-derived on demand (support may be empty).
    AstimBlock block(int test) const;

    void save(std::ostream& os) const;
    static EeScheme load(std::istream& is);
};

EeScheme build_ee(int n, int k, double alpha, int c = 16, std::uint64_t seed = 1);

/// y = stacked nz(C_i x); touches only the log2(n_pad) blocks of each
/// support item, never all n columns.
MeasurementBits measure(const EeScheme& s, const SparseSignal& x, double tol = 0.0);

/// Explicit block stack over dimension n_pad. Memory grows like
/// n_pad * log2(n_pad) * k_alpha; meant for small-scale cross-checks.
BlockSensingMatrix materialize_blocks(const EeScheme& s);

/// ORs each block down to one group-testing bit, then runs the splitting
/// decoder. Padding items are filtered from the positives.
GtResult decode_ee(const EeScheme& s, const MeasurementBits& y, int cap = 8);

}  // namespace edocs
