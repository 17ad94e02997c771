#include "edocs/foreach.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "edocs/rng.hpp"

namespace edocs {

namespace {
constexpr std::uint64_t kBlockTag = 0xa57b10c;

double entry(std::uint64_t block_seed, int row, int item, AstimKind kind, int position) {
    if (kind == AstimKind::Hilbert) return 1.0 / (row + position + 1);
    return gaussian_at(seed_combine(block_seed, static_cast<std::uint64_t>(row), static_cast<std::uint64_t>(item)));
}
}  // namespace

AstimBlock build_astim(std::vector<int> support, int rows, std::uint64_t seed, AstimKind kind) {
    if (support.empty()) throw std::invalid_argument("build_astim: empty support");
    if (rows < 1) throw std::invalid_argument("build_astim: need at least one row");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0) throw std::invalid_argument("build_astim: negative index");
        if (i > 0 && support[i - 1] >= support[i])
            throw std::invalid_argument("build_astim: support must be strictly increasing");
    }
    AstimBlock b;
    b.rows = rows;
    b.coeffs.resize(static_cast<std::size_t>(rows) * support.size());
    for (int r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < support.size(); ++c)
            b.coeffs[static_cast<std::size_t>(r) * support.size() + c] =
                entry(seed, r, support[c], kind, static_cast<int>(c));
    b.support = std::move(support);
    return b;
}

std::uint64_t EeScheme::block_seed(int test) const {
    return seed_combine(seed, kBlockTag, static_cast<std::uint64_t>(test));
}

AstimBlock EeScheme::block(int test) const {
    std::vector<int> sup = row_support(fbs, test);
    if (sup.empty()) return AstimBlock{{}, k_alpha, {}};
    return build_astim(std::move(sup), k_alpha, block_seed(test), AstimKind::Gaussian);
}

EeScheme build_ee(int n, int k, double alpha, int c, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("build_ee: need n >= 4");
    if (k < 1 || k >= n) throw std::invalid_argument("build_ee: need 1 <= k < n");
    if (!(alpha > 1.0)) throw std::invalid_argument("build_ee: alpha must exceed 1");
    if (c < 1) throw std::invalid_argument("build_ee: tests-per-level factor must be positive");
    EeScheme s;
    s.n = n;
    s.k = k;
    s.n_pad = static_cast<int>(std::bit_ceil(static_cast<unsigned>(n)));
    s.k_pad = std::max(2, static_cast<int>(std::bit_ceil(static_cast<unsigned>(k))));
    if (s.k_pad >= s.n_pad) throw std::invalid_argument("build_ee: k too close to n after padding");
    s.alpha = alpha;
    s.c = c;
    s.seed = seed;
    const double v = static_cast<double>(c) * s.k_pad;  // tests per level
    if (v < 3.0) throw std::invalid_argument("build_ee: tests per level too small");
    s.k_alpha = static_cast<int>(std::ceil(alpha * std::log(v) / std::log(std::log(v))));
    // Asymptotic sweet spot wants k above (ln n)^(1/(alpha-1)); compare logs
    // to keep the exponent from overflowing as alpha -> 1.
    s.regime_ok = std::log(static_cast<double>(s.k_pad)) >
                  std::log(std::log(static_cast<double>(s.n_pad))) / (alpha - 1.0);
    s.fbs = build_fbs(s.n_pad, s.k_pad, c, seed_combine(seed, 0xfb5));
    return s;
}

MeasurementBits measure(const EeScheme& s, const SparseSignal& x, double tol) {
    if (x.dim != s.n) throw std::invalid_argument("measure: dimension mismatch");
    // Accumulate only the blocks whose tests contain a support item; each
    // item lives in exactly log2(n_pad) tests.
    std::map<int, std::vector<double>> acc;
    for (const auto& [j, v] : x.entries) {
        auto touch = [&](int test) -> std::vector<double>& {
            auto it = acc.find(test);
            if (it == acc.end()) it = acc.emplace(test, std::vector<double>(static_cast<std::size_t>(s.k_alpha), 0.0)).first;
            return it->second;
        };
        const auto leaf = static_cast<std::uint64_t>(j);
        for (int level = s.fbs.log2k + 1; level <= s.fbs.log2n; ++level) {
            const int test = s.fbs.grow_test(level, leaf >> (s.fbs.log2n - level));
            auto& a = touch(test);
            const std::uint64_t bs = s.block_seed(test);
            for (int r = 0; r < s.k_alpha; ++r)
                a[static_cast<std::size_t>(r)] += gaussian_at(seed_combine(bs, static_cast<std::uint64_t>(r), leaf)) * v;
        }
        for (int g = 0; g < s.fbs.trim_groups(); ++g) {
            const int test = s.fbs.trim_test(g, leaf);
            auto& a = touch(test);
            const std::uint64_t bs = s.block_seed(test);
            for (int r = 0; r < s.k_alpha; ++r)
                a[static_cast<std::size_t>(r)] += gaussian_at(seed_combine(bs, static_cast<std::uint64_t>(r), leaf)) * v;
        }
    }
    MeasurementBits y;
    y.bits.assign(static_cast<std::size_t>(s.total_measurements()), 0);
    for (const auto& [test, a] : acc)
        for (int r = 0; r < s.k_alpha; ++r)
            y.bits[static_cast<std::size_t>(test) * static_cast<std::size_t>(s.k_alpha) + static_cast<std::size_t>(r)] =
                static_cast<std::uint8_t>(nz_scalar(a[static_cast<std::size_t>(r)], tol));
    return y;
}

BlockSensingMatrix materialize_blocks(const EeScheme& s) {
    BlockSensingMatrix m;
    m.dim = s.n_pad;
    m.blocks.reserve(static_cast<std::size_t>(s.test_count()));
    for (int t = 0; t < s.test_count(); ++t) m.blocks.push_back(s.block(t));
    return m;
}

GtResult decode_ee(const EeScheme& s, const MeasurementBits& y, int cap) {
    if (y.size() != s.total_measurements()) throw std::invalid_argument("decode_ee: measurement length mismatch");
    MeasurementBits gt;
    gt.bits.resize(static_cast<std::size_t>(s.test_count()));
    for (int t = 0; t < s.test_count(); ++t) {
        std::uint8_t bit = 0;
        for (int r = 0; r < s.k_alpha; ++r)
            bit |= y.bits[static_cast<std::size_t>(t) * static_cast<std::size_t>(s.k_alpha) + static_cast<std::size_t>(r)];
        gt.bits[static_cast<std::size_t>(t)] = bit;
    }
    GtResult res = fbs_decode(s.fbs, gt, cap);
    std::erase_if(res.positives, [&](int j) { return j >= s.n; });
    return res;
}

void EeScheme::save(std::ostream& os) const {
    os << "edocs-ee v1\n";
    os.precision(17);
    os << "n " << n << "\nk " << k << "\nalpha " << alpha << "\nc " << c
       << "\nk_alpha " << k_alpha << "\nseed " << seed << "\n";
}

EeScheme EeScheme::load(std::istream& is) {
    std::string magic;
    std::getline(is, magic);
    if (magic != "edocs-ee v1") throw std::invalid_argument("EeScheme: bad header");
    std::map<std::string, std::string> kv;
    std::string key, val;
    while (is >> key >> val) kv[key] = val;
    EeScheme s = build_ee(std::stoi(kv.at("n")), std::stoi(kv.at("k")), std::stod(kv.at("alpha")),
                          std::stoi(kv.at("c")), std::stoull(kv.at("seed")));
    if (s.k_alpha != std::stoi(kv.at("k_alpha")))
        throw std::invalid_argument("EeScheme: stored k_alpha disagrees with parameters");
    return s;
}

}  // namespace edocs
