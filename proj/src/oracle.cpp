#include "edocs/oracle.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "edocs/rng.hpp"

namespace edocs {

namespace {

// Column supports as row bitsets, one word run per column.
struct ColumnMasks {
    int words = 0;
    std::vector<std::uint64_t> data;

    explicit ColumnMasks(const BinaryDesign& m) {
        words = (m.rows + 63) / 64;
        data.assign(static_cast<std::size_t>(words) * static_cast<std::size_t>(m.cols), 0);
        for (int j = 0; j < m.cols; ++j)
            for (int r : m.col_supports[static_cast<std::size_t>(j)])
                data[static_cast<std::size_t>(j) * words + static_cast<std::size_t>(r / 64)] |= 1ULL << (r % 64);
    }

    const std::uint64_t* col(int j) const { return data.data() + static_cast<std::size_t>(j) * words; }
};

std::uint64_t binom_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    unsigned __int128 r = 1;
    for (int i = 0; i < k; ++i) {
        r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

void require_budget(std::uint64_t subsets, std::uint64_t budget) {
    if (subsets > budget) {
        std::ostringstream os;
        os << "oracle: enumeration budget exceeded (" << subsets << " > " << budget << " subsets)";
        throw std::runtime_error(os.str());
    }
}

}  // namespace

bool check_distinguishable(const BinaryDesign& m, int k, int l, std::uint64_t budget) {
    m.validate();
    if (k < 1 || k > m.cols) throw std::invalid_argument("check_distinguishable: k out of range");
    if (l < 1 || l > k) throw std::invalid_argument("check_distinguishable: l out of range");
    require_budget(binom_capped(m.cols, k, budget), budget);
    const ColumnMasks masks(m);
    const int w = masks.words;
    std::vector<std::uint64_t> others(static_cast<std::size_t>(w));
    bool ok = true;
    for_each_subset(m.cols, k, [&](const std::vector<int>& t) {
        int covered = 0;
        for (int i = 0; i < k; ++i) {
            for (int d = 0; d < w; ++d) others[static_cast<std::size_t>(d)] = 0;
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                const std::uint64_t* c = masks.col(t[static_cast<std::size_t>(j)]);
                for (int d = 0; d < w; ++d) others[static_cast<std::size_t>(d)] |= c[d];
            }
            const std::uint64_t* ci = masks.col(t[static_cast<std::size_t>(i)]);
            for (int d = 0; d < w; ++d) {
                if (ci[d] & ~others[static_cast<std::size_t>(d)]) {
                    ++covered;
                    break;
                }
            }
        }
        if (covered <= k - l) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

bool check_strongly_distinguishable(const BinaryDesign& m, int k, double eps, std::uint64_t budget) {
    if (!(eps > 0.0)) throw std::invalid_argument("check_strongly_distinguishable: eps must be positive");
    for (int kp = 1; kp <= k; ++kp) {
        int l = std::max(1, static_cast<int>(std::floor(eps * kp)));
        l = std::min(l, kp);
        if (!check_distinguishable(m, kp, l, budget)) return false;
    }
    return true;
}

bool check_list_uf(const BinaryDesign& m, int k, int l, double alpha, std::uint64_t budget) {
    m.validate();
    if (m.col_weight < 1) throw std::invalid_argument("check_list_uf: constant column weight required");
    if (k < 1 || l < 1 || k + l > m.cols) throw std::invalid_argument("check_list_uf: k, l out of range");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("check_list_uf: alpha out of (0, 1]");
    {
        const std::uint64_t s_count = binom_capped(m.cols, l, budget);
        const std::uint64_t t_count = binom_capped(m.cols - l, k, budget);
        unsigned __int128 total = static_cast<unsigned __int128>(s_count) * t_count;
        require_budget(total > budget ? budget + 1 : static_cast<std::uint64_t>(total), budget);
    }
    const ColumnMasks masks(m);
    const int w = masks.words;
    const double bound = alpha * m.col_weight;
    std::vector<int> rest;  // columns outside S, reindexed for the inner enumeration
    rest.reserve(static_cast<std::size_t>(m.cols));
    std::vector<std::uint64_t> uni(static_cast<std::size_t>(w));
    bool ok = true;
    for_each_subset(m.cols, l, [&](const std::vector<int>& s) {
        rest.clear();
        {
            std::size_t si = 0;
            for (int j = 0; j < m.cols; ++j) {
                if (si < s.size() && s[si] == j) {
                    ++si;
                    continue;
                }
                rest.push_back(j);
            }
        }
        for_each_subset(static_cast<int>(rest.size()), k, [&](const std::vector<int>& tidx) {
            bool found = false;
            for (int cand = 0; cand < l && !found; ++cand) {
                for (int d = 0; d < w; ++d) uni[static_cast<std::size_t>(d)] = 0;
                for (int j : tidx) {
                    const std::uint64_t* c = masks.col(rest[static_cast<std::size_t>(j)]);
                    for (int d = 0; d < w; ++d) uni[static_cast<std::size_t>(d)] |= c[d];
                }
                for (int other = 0; other < l; ++other) {
                    if (other == cand) continue;
                    const std::uint64_t* c = masks.col(s[static_cast<std::size_t>(other)]);
                    for (int d = 0; d < w; ++d) uni[static_cast<std::size_t>(d)] |= c[d];
                }
                const std::uint64_t* cj = masks.col(s[static_cast<std::size_t>(cand)]);
                int overlap = 0;
                for (int d = 0; d < w; ++d) overlap += std::popcount(cj[d] & uni[static_cast<std::size_t>(d)]);
                if (overlap < bound) found = true;
            }
            if (!found) {
                ok = false;
                return false;
            }
            return true;
        });
        return ok;
    });
    return ok;
}

bool check_strongly_list_uf(const BinaryDesign& m, int k, double eps, double alpha, std::uint64_t budget) {
    if (!(eps > 0.0)) throw std::invalid_argument("check_strongly_list_uf: eps must be positive");
    for (int kp = 1; kp <= k; ++kp) {
        const int l = std::max(1, static_cast<int>(std::floor(eps * kp)));
        if (!check_list_uf(m, kp, l, alpha, budget)) return false;
    }
    return true;
}

std::vector<int> exhaustive_gt_decode(const BinaryDesign& b, const MeasurementBits& y) {
    b.validate();
    if (y.size() != b.rows) throw std::invalid_argument("exhaustive_gt_decode: measurement length mismatch");
    std::vector<int> out;
    for (int j = 0; j < b.cols; ++j) {
        bool all_pos = true;
        for (int r : b.col_supports[static_cast<std::size_t>(j)]) {
            if (!y.bits[static_cast<std::size_t>(r)]) {
                all_pos = false;
                break;
            }
        }
        if (all_pos) out.push_back(j);
    }
    return out;
}

double bib_simulate(const BibConfig& cfg) {
    if (cfg.balls < 1 || cfg.bins < 1 || cfg.trials < 1)
        throw std::invalid_argument("bib_simulate: balls, bins, trials must be positive");
    if (cfg.threshold < 0) throw std::invalid_argument("bib_simulate: negative threshold");
    std::vector<int> load(static_cast<std::size_t>(cfg.bins), 0);
    std::vector<std::uint64_t> touched;
    touched.reserve(static_cast<std::size_t>(cfg.balls));
    std::uint64_t overloaded = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        Rng rng(seed_combine(cfg.seed, t));
        touched.clear();
        int max_load = 0;
        for (std::uint64_t b = 0; b < cfg.balls; ++b) {
            const std::uint64_t bin = rng.below(cfg.bins);
            const int v = ++load[static_cast<std::size_t>(bin)];
            if (v > max_load) max_load = v;
            touched.push_back(bin);
        }
        for (std::uint64_t bin : touched) load[static_cast<std::size_t>(bin)] = 0;
        if (max_load > cfg.threshold) ++overloaded;
    }
    return static_cast<double>(overloaded) / static_cast<double>(cfg.trials);
}

std::string design_hash(const BinaryDesign& d) {
    const std::string text = d.save_string();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string verdict_record(const BinaryDesign& d, std::string_view property,
                           std::string_view params, bool verdict) {
    std::ostringstream os;
    os << "design=" << design_hash(d) << " property=" << property;
    if (!params.empty()) os << ' ' << params;
    os << " verdict=" << (verdict ? "true" : "false");
    return os.str();
}

}  // namespace edocs
