#pragma once
// Seeded trial runner tying the schemes together: draw a support, draw
// values under a signal model, encode, decode, score. Every trial derives
// its RNG stream from (seed, trial index), so reports are reproducible and
// trials are order-independent. Sweeps emit one CSV row per config.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edocs/core.hpp"
#include "edocs/foreach.hpp"
#include "edocs/universal.hpp"

namespace edocs {

enum class TrialScheme { AA, AE, EE };

enum class SignalModel {
    GaussianValues,            // i.i.d. standard normal; accidental zeros have probability 0
    UnitValues,                // all-ones
    AdversarialCancellation,   // values paired so one measurement row sums to zero
};

std::string to_string(TrialScheme s);
std::string to_string(SignalModel m);
TrialScheme trial_scheme_from_string(const std::string& s);
SignalModel signal_model_from_string(const std::string& s);

struct TrialConfig {
    TrialScheme scheme = TrialScheme::AE;
    int n = 0;
    int k = 0;
    double eps = 0.5;    // approximation slack (AA only)
    double alpha = 3.0;  // block-height exponent (EE only)
    int c = 16;          // tests per tree level = c * k_pad (EE only)
    SignalModel model = SignalModel::GaussianValues;
    int trials = 0;
    std::uint64_t seed = 1;
    SchemeConstants constants;  // sizing constants + verify mode (AA/AE only)
    int cap = 8;                // decoder candidate cap multiplier (EE only)
    double tol = 1e-12;         // nonzero tolerance for float measurements
    int fixed_sparsity = 0;     // 0: draw k' uniformly in [1, k]; else exactly this
};

struct TrialReport {
    int trials = 0;
    int successes = 0;
    int failures = 0;
    int m = 0;  // measurements taken by the scheme under test
    std::vector<std::uint64_t> column_reads;  // per trial; EE reports decoder visits
    std::vector<double> decode_seconds;       // per trial wall time of decode only
    std::vector<double> miss_ratio;           // per trial |S \ Shat| / k'
    std::vector<double> extra_ratio;          // per trial |Shat \ S| / k'

    double success_rate() const;
    double mean_column_reads() const;
    std::uint64_t max_column_reads() const;
    double mean_decode_seconds() const;
    double worst_miss_ratio() const;
    double worst_extra_ratio() const;
};

/// Builds the configured scheme once, then runs cfg.trials independent
/// trials. Success means exact support recovery for AE/EE and both
/// eps-bounds (misses and false alarms each <= eps * k') for AA.
TrialReport run_trials(const TrialConfig& cfg);

/// One row per config, columns
///   scheme,n,k,eps_or_alpha,m,mean_column_reads,success_rate,mean_decode_seconds
/// A cell whose run throws reports m = 0 and nan statistics. with_timing =
/// false writes 0 for the timing column, making the bytes machine-stable.
std::string run_sweep(const std::vector<TrialConfig>& grid, bool with_timing = true);

/// Text form: "dim <n>" then one "<index> <value>" line per entry.
void save_signal(std::ostream& os, const SparseSignal& x);
SparseSignal load_signal(std::istream& is);

/// Single line of '0'/'1' characters.
void save_bits(std::ostream& os, const MeasurementBits& y);
MeasurementBits load_bits(std::istream& is);

}  // namespace edocs
