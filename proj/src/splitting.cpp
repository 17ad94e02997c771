#include "edocs/splitting.hpp"

#include <bit>
#include <stdexcept>

#include "edocs/rng.hpp"

namespace edocs {

namespace {
constexpr std::uint64_t kGrowPhase = 0x67726f77;  // tags keep the two hash families apart
constexpr std::uint64_t kTrimPhase = 0x7472696d;
}  // namespace

int FbsDesign::grow_test(int level, std::uint64_t node) const {
    const std::uint64_t h = seed_combine(seed, kGrowPhase ^ (static_cast<std::uint64_t>(level) << 32), node);
    const int slot = static_cast<int>(hash_to_slot(h, static_cast<std::uint64_t>(tests_per_level)));
    return (level - log2k - 1) * tests_per_level + slot;
}

int FbsDesign::trim_test(int group, std::uint64_t leaf) const {
    const std::uint64_t h = seed_combine(seed, kTrimPhase ^ (static_cast<std::uint64_t>(group) << 32), leaf);
    const int slot = static_cast<int>(hash_to_slot(h, static_cast<std::uint64_t>(tests_per_level)));
    return (grow_levels() + group) * tests_per_level + slot;
}

FbsDesign build_fbs(int n, int k, int c, std::uint64_t seed) {
    if (n < 4 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("build_fbs: n must be a power of two >= 4");
    if (k < 2 || !std::has_single_bit(static_cast<unsigned>(k)))
        throw std::invalid_argument("build_fbs: k must be a power of two >= 2");
    if (k >= n) throw std::invalid_argument("build_fbs: need k < n");
    if (c < 1) throw std::invalid_argument("build_fbs: tests-per-level factor must be positive");
    FbsDesign d;
    d.n = n;
    d.k = k;
    d.c = c;
    d.log2n = std::countr_zero(static_cast<unsigned>(n));
    d.log2k = std::countr_zero(static_cast<unsigned>(k));
    d.tests_per_level = c * k;
    d.seed = seed;
    return d;
}

std::vector<int> row_support(const FbsDesign& d, int test) {
    if (test < 0 || test >= d.total_tests()) throw std::invalid_argument("row_support: test out of range");
    std::vector<int> out;
    const int bank = test / d.tests_per_level;
    if (bank < d.grow_levels()) {
        const int level = d.log2k + 1 + bank;
        const int span = 1 << (d.log2n - level);
        for (std::uint64_t node = 0; node < (1ULL << level); ++node) {
            if (d.grow_test(level, node) != test) continue;
            const int base = static_cast<int>(node) * span;
            for (int leaf = base; leaf < base + span; ++leaf) out.push_back(leaf);
        }
    } else {
        const int group = bank - d.grow_levels();
        for (int leaf = 0; leaf < d.n; ++leaf)
            if (d.trim_test(group, static_cast<std::uint64_t>(leaf)) == test) out.push_back(leaf);
    }
    return out;
}

BinaryDesign materialize_design(const FbsDesign& d) {
    BinaryDesign b;
    b.rows = d.total_tests();
    b.cols = d.n;
    b.col_weight = d.log2n;
    b.col_supports.resize(static_cast<std::size_t>(d.n));
    for (int leaf = 0; leaf < d.n; ++leaf) {
        auto& sup = b.col_supports[static_cast<std::size_t>(leaf)];
        sup.reserve(static_cast<std::size_t>(d.log2n));
        for (int level = d.log2k + 1; level <= d.log2n; ++level)
            sup.push_back(d.grow_test(level, static_cast<std::uint64_t>(leaf) >> (d.log2n - level)));
        for (int g = 0; g < d.trim_groups(); ++g)
            sup.push_back(d.trim_test(g, static_cast<std::uint64_t>(leaf)));
    }
    b.validate();
    return b;
}

GtResult fbs_decode(const FbsDesign& d, const MeasurementBits& y, int cap) {
    if (y.size() != d.total_tests()) throw std::invalid_argument("fbs_decode: measurement length mismatch");
    if (cap < 1) throw std::invalid_argument("fbs_decode: cap must be positive");
    GtResult res;
    const std::size_t limit = static_cast<std::size_t>(cap) * static_cast<std::size_t>(d.k);
    std::vector<std::uint64_t> cands(static_cast<std::size_t>(d.k));
    for (int i = 0; i < d.k; ++i) cands[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
    res.candidates_peak = d.k;
    std::vector<std::uint64_t> next;
    for (int level = d.log2k + 1; level <= d.log2n; ++level) {
        next.clear();
        for (std::uint64_t node : cands) {
            ++res.visits;
            for (std::uint64_t child = node << 1; child <= (node << 1) + 1; ++child)
                if (y.bits[static_cast<std::size_t>(d.grow_test(level, child))]) next.push_back(child);
        }
        if (next.size() > limit) {
            res.failed = true;
            res.candidates_peak = std::max(res.candidates_peak, static_cast<int>(next.size()));
            return res;
        }
        cands.swap(next);
        res.candidates_peak = std::max(res.candidates_peak, static_cast<int>(cands.size()));
    }
    for (std::uint64_t leaf : cands) {
        ++res.visits;
        bool keep = true;
        for (int g = 0; g < d.trim_groups(); ++g) {
            if (!y.bits[static_cast<std::size_t>(d.trim_test(g, leaf))]) {
                keep = false;
                break;
            }
        }
        if (keep) res.positives.push_back(static_cast<int>(leaf));
    }
    return res;
}

}  // namespace edocs
