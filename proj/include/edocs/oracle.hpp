#pragma once
// Brute-force ground truth. Everything here is written directly off the
// combinatorial definitions (exhaustive subset enumeration, plain
// simulation) so the constructions elsewhere can be checked against an
// implementation that shares none of their code paths.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edocs/core.hpp"

namespace edocs {

inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000;

/// Visits every k-subset of [0, n) in lexicographic order until `f` returns
/// false. Returns true if the enumeration ran to completion.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k == 0) return f(idx);
    if (k > n) return true;
    for (;;) {
        if (!f(static_cast<const std::vector<int>&>(idx))) return false;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
}

/// True iff for every k-subset T of columns, the rows restricted to T
/// contain singletons {i} for more than k - l of the indices i in T.
/// Throws when the subset count exceeds `budget`.
bool check_distinguishable(const BinaryDesign& m, int k, int l,
                           std::uint64_t budget = kDefaultEnumBudget);

/// Runs check_distinguishable for every k' <= k with l = max(1, floor(eps * k')).
bool check_strongly_distinguishable(const BinaryDesign& m, int k, double eps,
                                    std::uint64_t budget = kDefaultEnumBudget);

/// List-union-free test: for all disjoint S (|S| = l) and T (|T| = k), some
/// j in S has |B_j intersect union of the other supports| < alpha * d.
/// Requires a constant column weight d.
bool check_list_uf(const BinaryDesign& m, int k, int l, double alpha,
                   std::uint64_t budget = kDefaultEnumBudget);

/// check_list_uf for every k' <= k with l = max(1, floor(eps * k')).
bool check_strongly_list_uf(const BinaryDesign& m, int k, double eps, double alpha,
                            std::uint64_t budget = kDefaultEnumBudget);

/// Definite-negative group-testing decode: keeps exactly the items whose
/// every containing test is positive. Items contained in no test are never
/// ruled out.
std::vector<int> exhaustive_gt_decode(const BinaryDesign& b, const MeasurementBits& y);

/// u balls thrown uniformly into v bins, independently per trial.
struct BibConfig {
    std::uint64_t balls = 0;
    std::uint64_t bins = 0;
    int threshold = 0;  // "overload" means max bin load strictly above this
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Empirical probability that some bin exceeds the threshold. Trials are
/// keyed by (seed, trial index), so two configs differing only in threshold
/// share their ball placements.
double bib_simulate(const BibConfig& cfg);

/// FNV-1a over the serialized design, as 16 hex digits.
std::string design_hash(const BinaryDesign& d);

/// One-line machine-readable verdict: "design=<hash> property=<p> <params> verdict=<bool>".
std::string verdict_record(const BinaryDesign& d, std::string_view property,
                           std::string_view params, bool verdict);

}  // namespace edocs
