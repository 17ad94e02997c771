#include "edocs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "edocs/rng.hpp"

namespace edocs {

namespace {
constexpr std::uint64_t kTrialTag = 0x7121a1;
}

std::string to_string(TrialScheme s) {
    switch (s) {
        case TrialScheme::AA: return "aa";
        case TrialScheme::AE: return "ae";
        case TrialScheme::EE: return "ee";
    }
    throw std::invalid_argument("to_string: bad scheme");
}

std::string to_string(SignalModel m) {
    switch (m) {
        case SignalModel::GaussianValues: return "gaussian-values";
        case SignalModel::UnitValues: return "unit-values";
        case SignalModel::AdversarialCancellation: return "adversarial-cancellation";
    }
    throw std::invalid_argument("to_string: bad signal model");
}

TrialScheme trial_scheme_from_string(const std::string& s) {
    if (s == "aa") return TrialScheme::AA;
    if (s == "ae") return TrialScheme::AE;
    if (s == "ee") return TrialScheme::EE;
    throw std::invalid_argument("unknown scheme: " + s);
}

SignalModel signal_model_from_string(const std::string& s) {
    if (s == "gaussian-values") return SignalModel::GaussianValues;
    if (s == "unit-values") return SignalModel::UnitValues;
    if (s == "adversarial-cancellation") return SignalModel::AdversarialCancellation;
    throw std::invalid_argument("unknown signal model: " + s);
}

double TrialReport::success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
}

double TrialReport::mean_column_reads() const {
    if (column_reads.empty()) return 0.0;
    double sum = 0.0;
    for (std::uint64_t r : column_reads) sum += static_cast<double>(r);
    return sum / static_cast<double>(column_reads.size());
}

std::uint64_t TrialReport::max_column_reads() const {
    std::uint64_t best = 0;
    for (std::uint64_t r : column_reads) best = std::max(best, r);
    return best;
}

double TrialReport::mean_decode_seconds() const {
    if (decode_seconds.empty()) return 0.0;
    double sum = 0.0;
    for (double t : decode_seconds) sum += t;
    return sum / static_cast<double>(decode_seconds.size());
}

double TrialReport::worst_miss_ratio() const {
    double best = 0.0;
    for (double r : miss_ratio) best = std::max(best, r);
    return best;
}

double TrialReport::worst_extra_ratio() const {
    double best = 0.0;
    for (double r : extra_ratio) best = std::max(best, r);
    return best;
}

namespace {

void validate(const TrialConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("run_trials: need n >= 2");
    if (cfg.k < 1 || cfg.k >= cfg.n) throw std::invalid_argument("run_trials: need 1 <= k < n");
    if (cfg.trials < 0) throw std::invalid_argument("run_trials: negative trial count");
    if (cfg.tol < 0.0) throw std::invalid_argument("run_trials: negative tolerance");
    if (cfg.fixed_sparsity < 0 || cfg.fixed_sparsity > cfg.k)
        throw std::invalid_argument("run_trials: fixed sparsity out of [0, k]");
    if (cfg.scheme == TrialScheme::AA && (!(cfg.eps > 0.0) || cfg.eps > 1.0))
        throw std::invalid_argument("run_trials: eps out of (0, 1]");
    if (cfg.scheme == TrialScheme::EE) {
        if (!(cfg.alpha > 1.0)) throw std::invalid_argument("run_trials: need alpha > 1");
        if (cfg.c < 1) throw std::invalid_argument("run_trials: need c >= 1");
        if (cfg.cap < 1) throw std::invalid_argument("run_trials: need cap >= 1");
    }
}

SparseSignal plain_signal(Rng& rng, int n, int kp, SignalModel model) {
    std::vector<int> sup = sample_distinct(rng, n, kp);
    std::vector<std::pair<int, double>> entries;
    entries.reserve(sup.size());
    for (int j : sup) {
        double v = 1.0;
        if (model == SignalModel::GaussianValues)
            while ((v = rng.gaussian()) == 0.0) {}
        entries.emplace_back(j, v);
    }
    return SparseSignal::make(n, std::move(entries));
}

// Rows of the stage-2 design carrying at least two columns, as column lists.
std::vector<std::vector<int>> fat_rows(const BinaryDesign& d) {
    std::vector<std::vector<int>> by_row(static_cast<std::size_t>(d.rows));
    for (int j = 0; j < d.cols; ++j)
        for (int r : d.col_supports[static_cast<std::size_t>(j)])
            by_row[static_cast<std::size_t>(r)].push_back(j);
    std::erase_if(by_row, [](const std::vector<int>& cols) { return cols.size() < 2; });
    if (by_row.empty())
        throw std::runtime_error("adversarial model: no measurement row carries two columns");
    return by_row;
}

// Two columns sharing a stage-2 row get +1/-1; that row of A''x sums to
// zero even though its support meets supp(x).
SparseSignal adversarial_universal(Rng& rng, int n, int kp,
                                   const std::vector<std::vector<int>>& rows) {
    const std::vector<int>& cols = rows[static_cast<std::size_t>(rng.below(rows.size()))];
    std::vector<int> pos = sample_distinct(rng, static_cast<int>(cols.size()), 2);
    const int j1 = cols[static_cast<std::size_t>(pos[0])];
    const int j2 = cols[static_cast<std::size_t>(pos[1])];
    std::vector<int> sup = {j1, j2};
    while (static_cast<int>(sup.size()) < std::max(kp, 2)) {
        const int j = rng.below_int(n);
        if (std::find(sup.begin(), sup.end(), j) == sup.end()) sup.push_back(j);
    }
    std::sort(sup.begin(), sup.end());
    std::vector<std::pair<int, double>> entries;
    for (int j : sup) entries.emplace_back(j, j == j2 ? -1.0 : 1.0);
    return SparseSignal::make(n, std::move(entries));
}

// Support drawn inside one test's item set, with the last value chosen so
// one row of that test's block sums to exactly zero. The block's remaining
// rows stay nonzero, which is the point: one cancelled row cannot silence
// a whole test.
SparseSignal adversarial_ee(Rng& rng, const EeScheme& s, int kp) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        const int test = rng.below_int(s.test_count());
        AstimBlock blk = s.block(test);
        std::vector<int> usable;
        for (std::size_t c = 0; c < blk.support.size(); ++c)
            if (blk.support[c] < s.n) usable.push_back(static_cast<int>(c));
        if (static_cast<int>(usable.size()) < 2) continue;
        const int want = std::max(2, std::min({kp, s.k_alpha, static_cast<int>(usable.size())}));
        std::vector<int> picks = sample_distinct(rng, static_cast<int>(usable.size()), want);
        const int r0 = rng.below_int(s.k_alpha);
        std::vector<std::pair<int, double>> entries;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < picks.size(); ++i) {
            const int c = usable[static_cast<std::size_t>(picks[i])];
            entries.emplace_back(blk.support[static_cast<std::size_t>(c)], 1.0);
            acc += blk.coeff(r0, c);
        }
        const int last = usable[static_cast<std::size_t>(picks.back())];
        double v = -acc / blk.coeff(r0, last);
        if (!std::isfinite(v) || v == 0.0) v = 1.0;  // measure-zero degenerate draw
        entries.emplace_back(blk.support[static_cast<std::size_t>(last)], v);
        std::sort(entries.begin(), entries.end());
        return SparseSignal::make(s.n, std::move(entries));
    }
    throw std::runtime_error("adversarial model: found no test carrying two items");
}

}  // namespace

TrialReport run_trials(const TrialConfig& cfg) {
    validate(cfg);
    std::optional<UniversalScheme> uni;
    std::optional<EeScheme> ee;
    switch (cfg.scheme) {
        case TrialScheme::AA: uni = build_aa(cfg.n, cfg.k, cfg.eps, cfg.seed, cfg.constants); break;
        case TrialScheme::AE: uni = build_ae(cfg.n, cfg.k, cfg.seed, cfg.constants); break;
        case TrialScheme::EE: ee = build_ee(cfg.n, cfg.k, cfg.alpha, cfg.c, cfg.seed); break;
    }

    TrialReport rep;
    rep.trials = cfg.trials;
    rep.m = uni ? uni->total_measurements() : ee->total_measurements();
    rep.column_reads.reserve(static_cast<std::size_t>(cfg.trials));
    rep.decode_seconds.reserve(static_cast<std::size_t>(cfg.trials));
    rep.miss_ratio.reserve(static_cast<std::size_t>(cfg.trials));
    rep.extra_ratio.reserve(static_cast<std::size_t>(cfg.trials));

    std::vector<std::vector<int>> rows2;
    if (uni && cfg.model == SignalModel::AdversarialCancellation) rows2 = fat_rows(uni->stage2);

    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(seed_combine(cfg.seed, kTrialTag, static_cast<std::uint64_t>(t)));
        const int kp = cfg.fixed_sparsity ? cfg.fixed_sparsity : 1 + rng.below_int(cfg.k);
        SparseSignal x =
            cfg.model != SignalModel::AdversarialCancellation ? plain_signal(rng, cfg.n, kp, cfg.model)
            : uni ? adversarial_universal(rng, cfg.n, kp, rows2)
                  : adversarial_ee(rng, *ee, kp);
        const std::vector<int> truth = x.support();

        std::vector<int> got;
        std::uint64_t reads = 0;
        const auto t0 = std::chrono::steady_clock::now();
        if (uni) {
            const MeasurementBits y = measure(*uni, x, cfg.tol);
            RecoveredSupport rec = decode(*uni, y);
            got = std::move(rec.indices);
            reads = rec.column_reads;
        } else {
            const MeasurementBits y = measure(*ee, x, cfg.tol);
            GtResult res = decode_ee(*ee, y, cfg.cap);
            got = std::move(res.positives);
            reads = res.visits;
        }
        const auto t1 = std::chrono::steady_clock::now();

        int misses = 0, extras = 0;
        for (int j : truth)
            if (!std::binary_search(got.begin(), got.end(), j)) ++misses;
        for (int j : got)
            if (!std::binary_search(truth.begin(), truth.end(), j)) ++extras;
        const int kx = x.sparsity();
        const bool ok = cfg.scheme == TrialScheme::AA
                            ? misses <= cfg.eps * kx && extras <= cfg.eps * kx
                            : misses == 0 && extras == 0;
        (ok ? rep.successes : rep.failures) += 1;
        rep.column_reads.push_back(reads);
        rep.decode_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        rep.miss_ratio.push_back(static_cast<double>(misses) / kx);
        rep.extra_ratio.push_back(static_cast<double>(extras) / kx);
    }
    return rep;
}

std::string run_sweep(const std::vector<TrialConfig>& grid, bool with_timing) {
    std::ostringstream os;
    os << "scheme,n,k,eps_or_alpha,m,mean_column_reads,success_rate,mean_decode_seconds\n";
    for (const TrialConfig& cfg : grid) {
        const double knob = cfg.scheme == TrialScheme::AA   ? cfg.eps
                            : cfg.scheme == TrialScheme::EE ? cfg.alpha
                                                            : 0.0;
        os << to_string(cfg.scheme) << ',' << cfg.n << ',' << cfg.k << ',' << knob << ',';
        try {
            const TrialReport rep = run_trials(cfg);
            os << rep.m << ',' << rep.mean_column_reads() << ',' << rep.success_rate() << ','
               << (with_timing ? rep.mean_decode_seconds() : 0.0) << '\n';
        } catch (const std::exception&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            os << 0 << ',' << nan << ',' << nan << ',' << nan << '\n';
        }
    }
    return os.str();
}

void save_signal(std::ostream& os, const SparseSignal& x) {
    os.precision(17);
    os << "dim " << x.dim << '\n';
    for (const auto& [j, v] : x.entries) os << j << ' ' << v << '\n';
}

SparseSignal load_signal(std::istream& is) {
    std::string word;
    int dim = 0;
    if (!(is >> word >> dim) || word != "dim") throw std::invalid_argument("signal: bad header");
    std::vector<std::pair<int, double>> entries;
    int j;
    double v;
    while (is >> j >> v) entries.emplace_back(j, v);
    return SparseSignal::make(dim, std::move(entries));
}

void save_bits(std::ostream& os, const MeasurementBits& y) {
    os << y.to_string() << '\n';
}

MeasurementBits load_bits(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("bits: empty input");
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return MeasurementBits::from_string(line);
}

}  // namespace edocs
