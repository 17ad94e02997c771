#pragma once
// Shared ground truth for every scheme in this library: sparse signals,
// one-bit measurements y = nz(Ax), binary designs stored column-sparsely,
// and real-valued block matrices. Everything downstream (signature
// magnification, binary splitting, block schemes) reduces to these.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace edocs {

/// sign(a): +1 for a >= 0, -1 otherwise. Rejects NaN/inf.
int sign_scalar(double a);

/// nz(a): 1 iff |a| > tol. tol = 0 means exact (the default for integer or
/// rational inputs); floating-point trial pipelines pass a small positive tol.
int nz_scalar(double a, double tol = 0.0);

/// Signal with explicit support. Entries are (index, value), sorted by index,
/// values nonzero and finite, indices in [0, dim).
struct SparseSignal {
    int dim = 0;
    std::vector<std::pair<int, double>> entries;

    static SparseSignal make(int dim, std::vector<std::pair<int, double>> entries);

    std::vector<int> support() const;
    int sparsity() const { return static_cast<int>(entries.size()); }
};

/// Bit vector of one-bit measurements; length always equals the row count of
/// the matrix that produced it.
struct MeasurementBits {
    std::vector<std::uint8_t> bits;

    int size() const { return static_cast<int>(bits.size()); }
    int count() const;
    std::string to_string() const;  // '0'/'1' characters
    static MeasurementBits from_string(const std::string& s);
    bool operator==(const MeasurementBits&) const = default;
};

/// 0/1 matrix stored as one sorted row-index list per column.
/// col_weight > 0 records that every column has exactly that many ones.
struct BinaryDesign {
    int rows = 0;
    int cols = 0;
    int col_weight = 0;
    std::vector<std::vector<int>> col_supports;

    void validate() const;
    bool operator==(const BinaryDesign&) const = default;

    /// Text form: header "n m d" (columns, rows, common column weight or 0),
    /// then one line per column listing its row support, 0-based.
    void save(std::ostream& os) const;
    static BinaryDesign load(std::istream& is);
    std::string save_string() const;
    static BinaryDesign load_string(const std::string& text);
};

/// Dense real block covering a subset of columns: coeffs is rows x |support|,
/// row-major; column c of coeffs multiplies x[support[c]].
struct AstimBlock {
    std::vector<int> support;
    int rows = 0;
    std::vector<double> coeffs;

    double coeff(int r, int c) const { return coeffs[static_cast<std::size_t>(r) * support.size() + static_cast<std::size_t>(c)]; }
};

/// Stack of real blocks acting on the same signal dimension.
struct BlockSensingMatrix {
    int dim = 0;
    std::vector<AstimBlock> blocks;

    int total_rows() const;
};

/// y = nz(Ax) computed support-sparsely: cost is the accumulator reset plus
/// the touched column supports, never a scan over all n columns.
MeasurementBits measure_binary(const BinaryDesign& a, const SparseSignal& x, double tol = 0.0);

/// Concatenation over blocks of nz(C_i x).
MeasurementBits measure_blocks(const BlockSensingMatrix& a, const SparseSignal& x, double tol = 0.0);

}  // namespace edocs
