// Acceptance gate: one named end-to-end check per release criterion, each
// printing exactly one "PASS <name>" or "FAIL <name>" line. Run with no
// arguments for all checks or with a list of names; exits nonzero if any
// executed check fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "edocs/designs.hpp"
#include "edocs/foreach.hpp"
#include "edocs/harness.hpp"
#include "edocs/oracle.hpp"
#include "edocs/rng.hpp"
#include "edocs/splitting.hpp"
#include "edocs/universal.hpp"
#include "toy_data.hpp"

using namespace edocs;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

SparseSignal gaussian_signal(int dim, const std::vector<int>& support, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, double>> entries;
    for (int j : support) {
        double v = 0.0;
        while ((v = rng.gaussian()) == 0.0) {}
        entries.emplace_back(j, v);
    }
    return SparseSignal::make(dim, std::move(entries));
}

// Criterion: blockwise signature magnification of the hand-checkable 2x8
// seed matrix reproduces the expected 12x8 matrix bit-for-bit, instantly.
Outcome check_magnification_example() {
    Outcome out;
    const BinaryDesign m = toy::design_from_rows(toy::kToyM);
    const SignatureMatrix u = build_signature(8);
    const auto t0 = std::chrono::steady_clock::now();
    const BinaryDesign big = magnify(m, u);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (big != toy::design_from_rows(toy::kToyMagnified)) {
        out.ok = false;
        out.detail = "magnified matrix mismatch";
    } else if (secs >= 1e-3) {
        out.ok = false;
        std::ostringstream os;
        os << "took " << secs << " s";
        out.detail = os.str();
    }
    return out;
}

// Criterion: the 3-row Hilbert block on columns {1,2,4,7} equals the
// hand-written dense matrix entrywise with zero tolerance.
Outcome check_hilbert_astim_example() {
    Outcome out;
    const AstimBlock b = build_astim({toy::kHilbertSupport.begin(), toy::kHilbertSupport.end()},
                                     3, 1, AstimKind::Hilbert);
    for (int r = 0; r < 3; ++r) {
        std::size_t pos = 0;
        for (int j = 0; j < 8; ++j) {
            const double want = toy::kHilbertDense[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            double got = 0.0;
            if (pos < b.support.size() && b.support[pos] == j) got = b.coeff(r, static_cast<int>(pos++));
            if (got != want) {
                out.ok = false;
                std::ostringstream os;
                os << "entry (" << r << "," << j << ") = " << got << ", want " << want;
                out.detail = os.str();
                return out;
            }
        }
    }
    return out;
}

// Criterion: for n in {8, 64, 1000, 1024} every signature column weighs
// exactly L = ceil(log2 n) and every pairwise OR weighs at least L + 1.
Outcome check_signature_properties() {
    Outcome out;
    for (int n : {8, 64, 1000, 1024}) {
        const int L = signature_length(n);
        const SignatureMatrix u = build_signature(n);
        std::vector<std::uint64_t> words(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            words[static_cast<std::size_t>(j)] = signature_word(j, L);
            const int w = std::popcount(words[static_cast<std::size_t>(j)]);
            const int stored = static_cast<int>(u.mat.col_supports[static_cast<std::size_t>(j)].size());
            if (w != L || stored != L) {
                out.ok = false;
                std::ostringstream os;
                os << "n=" << n << " column " << j << " weight " << w << "/" << stored << ", want " << L;
                out.detail = os.str();
                return out;
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (std::popcount(words[static_cast<std::size_t>(a)] | words[static_cast<std::size_t>(b)]) < L + 1) {
                    out.ok = false;
                    std::ostringstream os;
                    os << "n=" << n << " OR(" << a << "," << b << ") weighs under " << L + 1;
                    out.detail = os.str();
                    return out;
                }
    }
    return out;
}

// Criterion: the verified exact scheme at n=64, k=3 recovers every support
// of size 1..3 with gaussian values -- all 43,744 of them.
Outcome check_ae_exhaustive_recovery() {
    Outcome out;
    SchemeConstants c;
    c.verify = VerifyMode::On;
    const UniversalScheme s = build_ae(64, 3, 5, c);
    std::uint64_t total = 0, wrong = 0;
    for (int kp = 1; kp <= 3; ++kp) {
        for_each_subset(64, kp, [&](const std::vector<int>& support) {
            const SparseSignal x = gaussian_signal(64, support, seed_combine(0xacce97, total));
            const RecoveredSupport rec = decode(s, measure(s, x));
            ++total;
            if (rec.indices != support) ++wrong;
            return true;
        });
    }
    std::ostringstream os;
    os << total << " supports, " << wrong << " wrong";
    out.detail = os.str();
    out.ok = total == 43744 && wrong == 0;
    return out;
}

// Criterion: the approximate scheme at n=256, k=8, eps=0.5 satisfies both
// eps inequalities in at least 99% of 1000 gaussian trials.
Outcome check_aa_approximation() {
    Outcome out;
    TrialConfig cfg;
    cfg.scheme = TrialScheme::AA;
    cfg.n = 256;
    cfg.k = 8;
    cfg.eps = 0.5;
    cfg.trials = 1000;
    cfg.seed = 2;
    const TrialReport rep = run_trials(cfg);
    std::ostringstream os;
    os << rep.successes << "/" << rep.trials << " within both eps bounds";
    out.detail = os.str();
    out.ok = rep.successes >= 990;
    return out;
}

// Criterion: the block scheme at n=2^16, k=64, alpha=3, C=16 takes exactly
// 16 * k_alpha * k * log2(n) = 180,224 measurements and fails at most 2 of
// 1000 planted gaussian trials.
Outcome check_ee_end_to_end() {
    Outcome out;
    const EeScheme s = build_ee(1 << 16, 64, 3.0, 16, 1);
    if (s.total_measurements() != 180224) {
        out.ok = false;
        std::ostringstream os;
        os << "m = " << s.total_measurements() << ", want 180224";
        out.detail = os.str();
        return out;
    }
    TrialConfig cfg;
    cfg.scheme = TrialScheme::EE;
    cfg.n = 1 << 16;
    cfg.k = 64;
    cfg.alpha = 3.0;
    cfg.c = 16;
    cfg.trials = 1000;
    cfg.seed = 1;
    cfg.fixed_sparsity = 64;
    const TrialReport rep = run_trials(cfg);
    std::ostringstream os;
    os << "m = 180224, " << rep.failures << " failures in " << rep.trials << " trials";
    out.detail = os.str();
    out.ok = rep.failures <= 2;
    return out;
}

// Criterion: decoding cost is sublinear in n. With k=4 fixed, each trial's
// universal column-read counter grows by at most 2x as n goes 2^12 -> 2^16
// (n itself grows 16x); the block decoder stays within cap * k * log2(n)
// candidate visits on every trial.
Outcome check_sublinear_decoding() {
    Outcome out;
    TrialConfig cfg;
    cfg.scheme = TrialScheme::AE;
    cfg.k = 4;
    cfg.trials = 50;
    cfg.seed = 4;
    cfg.fixed_sparsity = 4;
    cfg.n = 1 << 12;
    const TrialReport small = run_trials(cfg);
    cfg.n = 1 << 16;
    const TrialReport large = run_trials(cfg);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const double ratio = static_cast<double>(large.column_reads[static_cast<std::size_t>(t)]) /
                             static_cast<double>(small.column_reads[static_cast<std::size_t>(t)]);
        worst = std::max(worst, ratio);
    }

    TrialConfig ee;
    ee.scheme = TrialScheme::EE;
    ee.n = 1 << 16;
    ee.k = 64;
    ee.alpha = 3.0;
    ee.c = 16;
    ee.trials = 100;
    ee.seed = 6;
    const TrialReport rep = run_trials(ee);
    const std::uint64_t visit_cap = 8ull * 64 * 16;

    std::ostringstream os;
    os << "worst read ratio " << worst << " (cap 2), max visits " << rep.max_column_reads()
       << " (cap " << visit_cap << ")";
    out.detail = os.str();
    out.ok = small.success_rate() == 1.0 && large.success_rate() == 1.0 && worst <= 2.0 &&
             rep.max_column_reads() <= visit_cap;
    return out;
}

// Criterion: the brute-force oracles agree with each other and with theory:
// list-union-freeness implies distinguishability on 100 random fixtures,
// the tree decoder's positives are always a subset of the definite-negative
// decoder's, and the balls-into-bins overload probability stays under the
// per-level design bound.
Outcome check_oracle_cross_checks() {
    Outcome out;
    int lhs_holds = 0;
    for (std::uint64_t f = 0; f < 100; ++f) {
        Rng rng(seed_combine(0xcc, f));
        const int m0 = 12 + rng.below_int(17);
        const int n = 8 + rng.below_int(7);
        const int dmax = std::min(8, m0 / 2);
        const int d = 3 + rng.below_int(dmax - 2);
        const BinaryDesign design = build_random_cw_design(m0, n, d, seed_combine(0xcc01, f));
        const bool lhs = check_list_uf(design, 2, 1, 1.0);
        lhs_holds += lhs;
        if (lhs && !check_distinguishable(design, 3, 1)) {
            out.ok = false;
            std::ostringstream os;
            os << "fixture " << f << ": list-UF holds but distinguishability fails";
            out.detail = os.str();
            return out;
        }
    }
    if (lhs_holds == 0) {
        out.ok = false;
        out.detail = "implication never exercised: no fixture was list-union-free";
        return out;
    }

    for (std::uint64_t f = 0; f < 100; ++f) {
        Rng rng(seed_combine(0xdd, f));
        const FbsDesign d = build_fbs(256, 4, 16, seed_combine(0xdd01, f));
        const BinaryDesign mat = materialize_design(d);
        const std::vector<int> support = sample_distinct(rng, 256, 4);
        std::vector<std::pair<int, double>> entries;
        for (int j : support) entries.emplace_back(j, 1.0);
        const MeasurementBits y = measure_binary(mat, SparseSignal::make(256, std::move(entries)));
        const GtResult dec = fbs_decode(d, y, 8);
        const std::vector<int> comp = exhaustive_gt_decode(mat, y);
        const bool subset = std::includes(comp.begin(), comp.end(), dec.positives.begin(), dec.positives.end());
        const bool covered = !dec.failed && std::includes(dec.positives.begin(), dec.positives.end(),
                                                          support.begin(), support.end());
        if (!subset || !covered) {
            out.ok = false;
            std::ostringstream os;
            os << "instance " << f << ": tree decode " << (subset ? "missed a planted item" : "kept a definite negative");
            out.detail = os.str();
            return out;
        }
    }

    BibConfig bc;
    bc.balls = 16;
    bc.bins = 256;   // 16k bins at k = 16
    bc.threshold = 5;  // k_alpha at alpha = 1.5, v = 256
    bc.trials = 100000;
    bc.seed = 2;
    const double p = bib_simulate(bc);
    std::ostringstream os;
    os << "implication fixtures with true premise: " << lhs_holds
       << "/100, overload probability " << p << " (bound 0.0625)";
    out.detail = os.str();
    out.ok = p <= 0.0625;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"magnification-example", check_magnification_example},
        {"hilbert-astim-example", check_hilbert_astim_example},
        {"signature-properties", check_signature_properties},
        {"ae-exhaustive-recovery", check_ae_exhaustive_recovery},
        {"aa-approximation", check_aa_approximation},
        {"ee-end-to-end", check_ee_end_to_end},
        {"sublinear-decoding", check_sublinear_decoding},
        {"oracle-cross-checks", check_oracle_cross_checks},
    };

    std::vector<std::string> wanted(argv + 1, argv + argc);
    if (wanted.empty())
        for (const auto& [name, fn] : checks) wanted.push_back(name);

    int failures = 0;
    for (const std::string& name : wanted) {
        const auto it = std::find_if(checks.begin(), checks.end(),
                                     [&](const auto& c) { return c.first == name; });
        if (it == checks.end()) {
            std::cout << "FAIL " << name << " (unknown check)" << std::endl;
            ++failures;
            continue;
        }
        Outcome out;
        try {
            out = it->second();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::cout << (out.ok ? "PASS " : "FAIL ") << name;
        if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
        std::cout << std::endl;
        failures += !out.ok;
    }
    return failures == 0 ? 0 : 1;
}
