#pragma once
// Matrix constructions behind the universal schemes: the bit-signature
// matrix whose columns self-identify, its blockwise magnification of a seed
// design, uniform random constant-column-weight designs, and the row/weight
// sizing rules for the two decode stages.

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "edocs/core.hpp"

namespace edocs {

/// 2L x n matrix, L = ceil(log2 n): column j is the L-bit binary
/// representation of j (most significant bit first) stacked on its bitwise
/// complement. Every column has weight exactly L, and the OR of any two
/// distinct columns has weight at least L + 1.
struct SignatureMatrix {
    int n = 0;
    int L = 0;
    BinaryDesign mat;
};

SignatureMatrix build_signature(int n);

/// Number of signature rows for dimension n.
int signature_length(int n);

/// Column j of the signature matrix packed into a word; bit r = row r.
std::uint64_t signature_word(int j, int L);

/// Reads one 2L-bit measurement block back to a column index. Returns the
/// index only if the block is exactly one signature column: weight L, bottom
/// half the complement of the top half, decoded value below n. Anything
/// else (including the OR of two or more columns) yields nullopt.
std::optional<int> decode_singleton(std::span<const std::uint8_t> block, int n);

/// Every column an independent uniform d-subset of the m0 rows.
BinaryDesign build_random_cw_design(int m0, int n, int d, std::uint64_t seed);

/// Replaces each 1 in row i, column j of `m` by column j of the signature
/// matrix and each 0 by a zero block: row block i of the result is
/// diag-selected signature columns. Output has u.mat.rows * m.rows rows.
BinaryDesign magnify(const BinaryDesign& m, const SignatureMatrix& u);

/// Row counts and column weights for a two-stage scheme. Stage 1 is the
/// magnified singleton-finding matrix, stage 2 the union-free filter; the
/// stages keep separate constants because the filter needs much sparser
/// columns relative to its row count before its overlap property can hold.
struct DesignParams {
    int n = 0;
    int k = 0;
    double eps = 0.0;  // 0 for the exact ("for-all") sizing
    double alpha_uf = 0.5;
    double c1 = 4.0, c2 = 4.0;        // stage-1 rows / weight constants
    double uf_c1 = 32.0, uf_c2 = 6.0; // stage-2 rows / weight constants
    int m1 = 0, d1 = 0;               // stage-1 rows, column weight
    int m2 = 0, d2 = 0;               // stage-2 rows, column weight

    std::string to_kv() const;
    static DesignParams from_kv(const std::string& text);
    bool operator==(const DesignParams&) const = default;
};

/// Approximate-recovery sizing: m1 = ceil(c1 * k * (2/eps) * ln(n/k)),
/// d1 = ceil(c2 * (2/eps) * ln(n/k)); stage 2 analogous with its own
/// constants. Accepts eps in (0, 2] so the eps = 2 degenerate case (which
/// collapses to the exact sizing at k = 1) stays expressible.
DesignParams sizing_aa(int n, int k, double eps,
                       double c1 = 4.0, double c2 = 4.0,
                       double uf_c1 = 32.0, double uf_c2 = 6.0);

/// Exact-recovery sizing: m1 = ceil(c1 * k^2 * ln(n/k)),
/// d1 = ceil(c2 * k * ln(n/k)); stage 2 analogous.
DesignParams sizing_ae(int n, int k,
                       double c1 = 4.0, double c2 = 4.0,
                       double uf_c1 = 32.0, double uf_c2 = 6.0);

}  // namespace edocs
