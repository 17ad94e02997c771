#pragma once
// For-all schemes built from two random designs: a magnified
// singleton-finding stage and a union-free filtering stage. Decoding reads
// the stage-1 blocks once, collects every block that is exactly one
// signature column, then keeps a candidate i only while its stage-2 column
// agrees with at least half its rows. Work is counted in column reads:
// m' block scans plus d'' rows per stage-1 candidate, independent of n.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edocs/core.hpp"
#include "edocs/designs.hpp"

namespace edocs {

enum class SchemeKind { AA, AE };

enum class VerifyMode {
    Auto,  // verify exactly when n <= 64 and k <= 3
    On,
    Off,
};

struct SchemeConstants {
    double c1 = 4.0, c2 = 4.0;
    double uf_c1 = 32.0, uf_c2 = 6.0;
    VerifyMode verify = VerifyMode::Auto;
    int max_retries = 32;
    std::uint64_t verify_budget = 8'000'000;
};

struct RecoveredSupport {
    std::vector<int> indices;
    int stage1_size = 0;            // candidates before the filter stage
    std::uint64_t column_reads = 0; // m' + stage1_size * d''
};

struct UniversalScheme {
    SchemeKind kind = SchemeKind::AE;
    int n = 0;
    int k = 0;
    double eps = 0.0;  // 0 for AE
    int L = 0;
    std::uint64_t seed = 0;
    DesignParams params;
    BinaryDesign stage1;  // pre-magnification singleton matrix M, m' rows
    BinaryDesign stage2;  // union-free filter A'', m'' rows, weight d''

    int stage1_blocks() const { return stage1.rows; }
    int magnified_rows() const { return 2 * L * stage1.rows; }
    int total_measurements() const { return magnified_rows() + stage2.rows; }

    void save(std::ostream& os) const;
    static UniversalScheme load(std::istream& is);
};

/// Validates shapes and wraps the two designs into a scheme.
UniversalScheme assemble_scheme(SchemeKind kind, int n, int k, double eps, std::uint64_t seed,
                                BinaryDesign stage1, BinaryDesign stage2, DesignParams params);

/// Approximate scheme: misses and false alarms both bounded by eps * |supp|.
UniversalScheme build_aa(int n, int k, double eps, std::uint64_t seed,
                         const SchemeConstants& constants = {});

/// Exact scheme. When verification is active the stage-1 design must pass
/// the distinguishability oracle and stage 2 the list-union-free oracle;
/// failing draws are retried with incremented seeds.
UniversalScheme build_ae(int n, int k, std::uint64_t seed,
                         const SchemeConstants& constants = {});

/// Whether a build with these parameters verifies its designs.
bool verification_active(int n, int k, VerifyMode mode);

/// Stage-1 magnified bits followed by stage-2 bits. The magnified matrix is
/// expanded on the fly from M and the signature words, so no 2L*m' x n
/// matrix is ever stored.
MeasurementBits measure(const UniversalScheme& s, const SparseSignal& x, double tol = 0.0);

RecoveredSupport decode(const UniversalScheme& s, const MeasurementBits& y);

/// Explicit stage-1 magnified matrix (2L * m' rows). Linear in m' * d' * L
/// memory; intended for small n and format round-trips.
BinaryDesign magnified_design(const UniversalScheme& s);

}  // namespace edocs
