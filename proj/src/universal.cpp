#include "edocs/universal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edocs/oracle.hpp"
#include "edocs/rng.hpp"

namespace edocs {

namespace {
constexpr std::uint64_t kStage1Tag = 0x51;
constexpr std::uint64_t kStage2Tag = 0x52;
}  // namespace

bool verification_active(int n, int k, VerifyMode mode) {
    if (mode == VerifyMode::On) return true;
    if (mode == VerifyMode::Off) return false;
    return n <= 64 && k <= 3;
}

UniversalScheme assemble_scheme(SchemeKind kind, int n, int k, double eps, std::uint64_t seed,
                                BinaryDesign stage1, BinaryDesign stage2, DesignParams params) {
    stage1.validate();
    stage2.validate();
    if (n < 2) throw std::invalid_argument("assemble_scheme: need n >= 2");
    if (k < 1 || k >= n) throw std::invalid_argument("assemble_scheme: need 1 <= k < n");
    if (stage1.cols != n || stage2.cols != n) throw std::invalid_argument("assemble_scheme: design width mismatch");
    if (stage2.col_weight < 1) throw std::invalid_argument("assemble_scheme: stage-2 design needs a constant column weight");
    if (kind == SchemeKind::AA && (!(eps > 0.0) || eps > 1.0))
        throw std::invalid_argument("assemble_scheme: eps out of (0, 1]");
    UniversalScheme s;
    s.kind = kind;
    s.n = n;
    s.k = k;
    s.eps = kind == SchemeKind::AA ? eps : 0.0;
    s.L = signature_length(n);
    s.seed = seed;
    s.params = std::move(params);
    s.stage1 = std::move(stage1);
    s.stage2 = std::move(stage2);
    return s;
}

namespace {

template <class Check>
BinaryDesign build_verified(int m0, int n, int d, std::uint64_t base_seed, bool verify,
                            int max_retries, const char* what, Check&& passes) {
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        BinaryDesign cand = build_random_cw_design(m0, n, d, base_seed + static_cast<std::uint64_t>(attempt));
        if (!verify || passes(cand)) return cand;
    }
    std::ostringstream os;
    os << "universal: " << what << " failed verification after " << (max_retries + 1) << " attempts";
    throw std::runtime_error(os.str());
}

UniversalScheme build_common(SchemeKind kind, int n, int k, double eps, std::uint64_t seed,
                             const SchemeConstants& c, const DesignParams& p) {
    if (p.d1 > p.m1 || p.d2 > p.m2) throw std::invalid_argument("universal: sizing infeasible (d > m)");
    const bool verify = verification_active(n, k, c.verify);
    BinaryDesign m = build_verified(
        p.m1, n, p.d1, seed_combine(seed, kStage1Tag), verify, c.max_retries, "stage-1 design",
        [&](const BinaryDesign& cand) {
            return kind == SchemeKind::AA
                       ? check_strongly_distinguishable(cand, k, eps / 2.0, c.verify_budget)
                       : check_distinguishable(cand, k, 1, c.verify_budget);
        });
    BinaryDesign a2 = build_verified(
        p.m2, n, p.d2, seed_combine(seed, kStage2Tag), verify, c.max_retries, "stage-2 design",
        [&](const BinaryDesign& cand) {
            return kind == SchemeKind::AA
                       ? check_strongly_list_uf(cand, k, eps / 2.0, p.alpha_uf, c.verify_budget)
                       : check_list_uf(cand, k, 1, p.alpha_uf, c.verify_budget);
        });
    return assemble_scheme(kind, n, k, eps, seed, std::move(m), std::move(a2), p);
}

}  // namespace

UniversalScheme build_aa(int n, int k, double eps, std::uint64_t seed, const SchemeConstants& c) {
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("build_aa: eps out of (0, 1]");
    const DesignParams p = sizing_aa(n, k, eps, c.c1, c.c2, c.uf_c1, c.uf_c2);
    return build_common(SchemeKind::AA, n, k, eps, seed, c, p);
}

UniversalScheme build_ae(int n, int k, std::uint64_t seed, const SchemeConstants& c) {
    const DesignParams p = sizing_ae(n, k, c.c1, c.c2, c.uf_c1, c.uf_c2);
    return build_common(SchemeKind::AE, n, k, 0.0, seed, c, p);
}

MeasurementBits measure(const UniversalScheme& s, const SparseSignal& x, double tol) {
    if (x.dim != s.n) throw std::invalid_argument("measure: dimension mismatch");
    const int block = 2 * s.L;
    std::vector<double> acc(static_cast<std::size_t>(s.magnified_rows()), 0.0);
    for (const auto& [j, v] : x.entries) {
        std::uint64_t word = signature_word(j, s.L);
        for (int i : s.stage1.col_supports[static_cast<std::size_t>(j)]) {
            const int base = i * block;
            for (std::uint64_t w = word; w;) {
                const int r = std::countr_zero(w);
                w &= w - 1;
                acc[static_cast<std::size_t>(base + r)] += v;
            }
        }
    }
    MeasurementBits y;
    y.bits.resize(static_cast<std::size_t>(s.total_measurements()));
    for (int i = 0; i < s.magnified_rows(); ++i)
        y.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(nz_scalar(acc[static_cast<std::size_t>(i)], tol));
    const MeasurementBits y2 = measure_binary(s.stage2, x, tol);
    std::copy(y2.bits.begin(), y2.bits.end(), y.bits.begin() + s.magnified_rows());
    return y;
}

RecoveredSupport decode(const UniversalScheme& s, const MeasurementBits& y) {
    if (y.size() != s.total_measurements()) throw std::invalid_argument("decode: measurement length mismatch");
    const int block = 2 * s.L;
    std::set<int> stage1_hits;
    for (int i = 0; i < s.stage1_blocks(); ++i) {
        const std::span<const std::uint8_t> blk(y.bits.data() + static_cast<std::size_t>(i) * block,
                                                static_cast<std::size_t>(block));
        if (auto idx = decode_singleton(blk, s.n)) stage1_hits.insert(*idx);
    }
    RecoveredSupport out;
    out.stage1_size = static_cast<int>(stage1_hits.size());
    out.column_reads = static_cast<std::uint64_t>(s.stage1_blocks());
    const std::uint8_t* y2 = y.bits.data() + s.magnified_rows();
    const int d2 = s.stage2.col_weight;
    for (int i : stage1_hits) {
        out.column_reads += static_cast<std::uint64_t>(d2);
        int dot = 0;
        for (int r : s.stage2.col_supports[static_cast<std::size_t>(i)]) dot += y2[r];
        if (2 * dot < d2) continue;  // below half agreement: drop; exact half stays
        out.indices.push_back(i);
    }
    return out;
}

BinaryDesign magnified_design(const UniversalScheme& s) {
    return magnify(s.stage1, build_signature(s.n));
}

void UniversalScheme::save(std::ostream& os) const {
    os << "edocs-universal v1\n";
    os.precision(17);
    os << "kind " << (kind == SchemeKind::AA ? "aa" : "ae") << "\n"
       << "n " << n << "\nk " << k << "\neps " << eps << "\nL " << L << "\nseed " << seed << "\n"
       << "params " << params.to_kv() << "\n"
       << "stage1\n";
    stage1.save(os);
    os << "stage2\n";
    stage2.save(os);
}

UniversalScheme UniversalScheme::load(std::istream& is) {
    std::string line;
    std::getline(is, line);
    if (line != "edocs-universal v1") throw std::invalid_argument("UniversalScheme: bad header");
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        if (line == "stage1") break;
        const auto pos = line.find(' ');
        if (pos == std::string::npos) throw std::invalid_argument("UniversalScheme: bad key line");
        kv[line.substr(0, pos)] = line.substr(pos + 1);
    }
    BinaryDesign m = BinaryDesign::load(is);
    std::getline(is, line);
    if (line != "stage2") throw std::invalid_argument("UniversalScheme: missing stage-2 design");
    BinaryDesign a2 = BinaryDesign::load(is);
    const SchemeKind kind = kv.at("kind") == "aa" ? SchemeKind::AA : SchemeKind::AE;
    UniversalScheme s = assemble_scheme(kind, std::stoi(kv.at("n")), std::stoi(kv.at("k")),
                                        kv.at("kind") == "aa" ? std::stod(kv.at("eps")) : 0.0,
                                        std::stoull(kv.at("seed")), std::move(m), std::move(a2),
                                        DesignParams::from_kv(kv.at("params")));
    if (s.L != std::stoi(kv.at("L"))) throw std::invalid_argument("UniversalScheme: stored L disagrees with n");
    return s;
}

}  // namespace edocs
