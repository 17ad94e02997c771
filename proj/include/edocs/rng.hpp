#pragma once
// Seeded randomness with a stream that is stable across platforms and
// compiler upgrades. Serialized schemes store only seeds, so the mapping
// seed -> design must never drift; std::uniform_int_distribution and
// std::normal_distribution give no such guarantee.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace edocs {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t seed_combine(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(a ^ splitmix64(b));
}

constexpr std::uint64_t seed_combine(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    return seed_combine(seed_combine(a, b), c);
}

/// Maps a 64-bit hash to a slot in [0, bound). Stateless; used where an
/// assignment must be derivable in O(1) without replaying a stream.
constexpr std::uint64_t hash_to_slot(std::uint64_t hash, std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(hash) * bound) >> 64);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); exact (Lemire multiply with rejection).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

    /// Standard normal via Box-Muller.
    double gaussian() noexcept {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::uint64_t state_;
};

/// Single standard-normal draw keyed by `key`; two equal keys give the same
/// value, so matrix entries can be re-derived without storing them.
inline double gaussian_at(std::uint64_t key) noexcept {
    Rng r(key);
    return r.gaussian();
}

/// Sorted sample of `count` distinct values from [0, n).
inline std::vector<int> sample_distinct(Rng& rng, int n, int count) {
    if (count < 0 || count > n) throw std::invalid_argument("sample_distinct: bad count");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count > n / 2) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int t = 0; t < count; ++t) {
            const int r = t + rng.below_int(n - t);
            std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(r)]);
            out.push_back(pool[static_cast<std::size_t>(t)]);
        }
    } else {
        std::unordered_set<int> seen;
        while (static_cast<int>(out.size()) < count) {
            const int v = rng.below_int(n);
            if (seen.insert(v).second) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace edocs
