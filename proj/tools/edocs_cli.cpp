// Command-line front end: build schemes, encode/decode signals, verify
// designs against the combinatorial oracles, run seeded trials and sweeps.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "edocs/foreach.hpp"
#include "edocs/harness.hpp"
#include "edocs/oracle.hpp"
#include "edocs/universal.hpp"

namespace {

using namespace edocs;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

VerifyMode parse_verify(const std::string& s) {
    if (s == "auto") return VerifyMode::Auto;
    if (s == "on") return VerifyMode::On;
    if (s == "off") return VerifyMode::Off;
    throw std::runtime_error("unknown verify mode: " + s);
}

struct UniversalOpts {
    int n = 0, k = 0;
    double eps = 0.5;
    std::uint64_t seed = 1;
    std::string verify = "auto";
    SchemeConstants constants;
};

void add_universal_opts(CLI::App* cmd, UniversalOpts& o, bool with_eps) {
    cmd->add_option("--n", o.n, "signal dimension")->required();
    cmd->add_option("--k", o.k, "sparsity bound")->required();
    if (with_eps) cmd->add_option("--eps", o.eps, "approximation slack in (0, 1]");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--verify", o.verify, "verify designs: auto|on|off");
    cmd->add_option("--c1", o.constants.c1, "stage-1 row constant");
    cmd->add_option("--c2", o.constants.c2, "stage-1 weight constant");
    cmd->add_option("--uf-c1", o.constants.uf_c1, "stage-2 row constant");
    cmd->add_option("--uf-c2", o.constants.uf_c2, "stage-2 weight constant");
    cmd->add_option("--max-retries", o.constants.max_retries, "verification redraws allowed");
    cmd->add_option("--verify-budget", o.constants.verify_budget, "oracle enumeration budget");
}

int run(int argc, char** argv) {
    CLI::App app{"one-bit sparse support recovery schemes"};
    app.require_subcommand(1);

    // build-universal
    auto* bu = app.add_subcommand("build-universal", "build an AA or AE scheme and write it out");
    UniversalOpts uo;
    std::string bu_kind;
    std::string bu_out;
    bu->add_option("--kind", bu_kind, "aa or ae")->required();
    add_universal_opts(bu, uo, true);
    bu->add_option("--out", bu_out, "output file (default stdout)");
    bu->callback([&] {
        uo.constants.verify = parse_verify(uo.verify);
        UniversalScheme s = bu_kind == "aa" ? build_aa(uo.n, uo.k, uo.eps, uo.seed, uo.constants)
                          : bu_kind == "ae" ? build_ae(uo.n, uo.k, uo.seed, uo.constants)
                                            : throw std::runtime_error("unknown kind: " + bu_kind);
        std::ostringstream os;
        s.save(os);
        spill(bu_out, os.str());
        std::cerr << "m=" << s.total_measurements() << " stage1-blocks=" << s.stage1_blocks()
                  << " magnified-rows=" << s.magnified_rows() << " stage2-rows=" << s.stage2.rows
                  << "\n";
    });

    // build-ee
    auto* be = app.add_subcommand("build-ee", "build a fixed-signal block scheme and write it out");
    int be_n = 0, be_k = 0, be_c = 16;
    double be_alpha = 3.0;
    std::uint64_t be_seed = 1;
    std::string be_out;
    be->add_option("--n", be_n, "signal dimension")->required();
    be->add_option("--k", be_k, "sparsity bound")->required();
    be->add_option("--alpha", be_alpha, "block-height exponent, > 1");
    be->add_option("--c", be_c, "tests per tree level = c * k (padded)");
    be->add_option("--seed", be_seed, "RNG seed");
    be->add_option("--out", be_out, "output file (default stdout)");
    be->callback([&] {
        EeScheme s = build_ee(be_n, be_k, be_alpha, be_c, be_seed);
        std::ostringstream os;
        s.save(os);
        spill(be_out, os.str());
        std::cerr << "m=" << s.total_measurements() << " tests=" << s.test_count()
                  << " k-alpha=" << s.k_alpha << "\n";
        if (!s.regime_ok)
            std::cerr << "warning: k is small relative to (ln n)^(1/(alpha-1)); "
                         "the max-load failure bound does not apply at this size\n";
    });

    // encode
    auto* en = app.add_subcommand("encode", "measure a sparse signal with a stored scheme");
    std::string en_scheme, en_signal = "-", en_out;
    double en_tol = 0.0;
    std::uint64_t en_seed = 1;
    en->add_option("--scheme", en_scheme, "scheme file")->required();
    en->add_option("--signal", en_signal, "signal file (default stdin)");
    en->add_option("--tol", en_tol, "nonzero tolerance");
    en->add_option("--seed", en_seed, "accepted for uniformity; encoding draws nothing");
    en->add_option("--out", en_out, "output file (default stdout)");
    en->callback([&] {
        const std::string text = slurp(en_scheme);
        std::istringstream sig(slurp(en_signal));
        const SparseSignal x = load_signal(sig);
        std::istringstream is(text);
        MeasurementBits y;
        if (first_line(text) == "edocs-universal v1")
            y = measure(UniversalScheme::load(is), x, en_tol);
        else
            y = measure(EeScheme::load(is), x, en_tol);
        std::ostringstream os;
        save_bits(os, y);
        spill(en_out, os.str());
    });

    // decode
    auto* de = app.add_subcommand("decode", "recover a support from stored measurements");
    std::string de_scheme, de_bits = "-", de_out;
    int de_cap = 8;
    std::uint64_t de_seed = 1;
    de->add_option("--scheme", de_scheme, "scheme file")->required();
    de->add_option("--bits", de_bits, "measurement file (default stdin)");
    de->add_option("--cap", de_cap, "candidate cap multiplier (block scheme only)");
    de->add_option("--seed", de_seed, "accepted for uniformity; decoding draws nothing");
    de->add_option("--out", de_out, "output file (default stdout)");
    de->callback([&] {
        const std::string text = slurp(de_scheme);
        std::istringstream bits(slurp(de_bits));
        const MeasurementBits y = load_bits(bits);
        std::istringstream is(text);
        std::ostringstream os;
        if (first_line(text) == "edocs-universal v1") {
            const RecoveredSupport rec = decode(UniversalScheme::load(is), y);
            for (std::size_t i = 0; i < rec.indices.size(); ++i)
                os << (i ? " " : "") << rec.indices[i];
            os << "\nstage1-candidates=" << rec.stage1_size << " column-reads=" << rec.column_reads
               << "\n";
        } else {
            const GtResult res = decode_ee(EeScheme::load(is), y, de_cap);
            for (std::size_t i = 0; i < res.positives.size(); ++i)
                os << (i ? " " : "") << res.positives[i];
            os << "\nvisits=" << res.visits << " failed=" << (res.failed ? 1 : 0) << "\n";
        }
        spill(de_out, os.str());
    });

    // verify-design
    auto* vd = app.add_subcommand("verify-design", "test a design against a combinatorial oracle");
    std::string vd_design, vd_scheme, vd_which = "stage2", vd_prop;
    int vd_k = 0, vd_l = 1;
    double vd_eps = 0.5, vd_alpha = 0.5;
    std::uint64_t vd_budget = kDefaultEnumBudget, vd_seed = 1;
    vd->add_option("--design", vd_design, "bare design file");
    vd->add_option("--scheme", vd_scheme, "universal scheme file to pull a stage from");
    vd->add_option("--which", vd_which, "stage1 or stage2 (with --scheme)");
    vd->add_option("--property", vd_prop,
                   "distinguishable|strongly-distinguishable|list-uf|strongly-list-uf")
        ->required();
    vd->add_option("--k", vd_k, "subset size")->required();
    vd->add_option("--l", vd_l, "list slack (plain properties)");
    vd->add_option("--eps", vd_eps, "slack fraction (strong properties)");
    vd->add_option("--alpha", vd_alpha, "overlap fraction (list-uf properties)");
    vd->add_option("--budget", vd_budget, "max subsets to enumerate");
    vd->add_option("--seed", vd_seed, "accepted for uniformity; verification draws nothing");
    vd->callback([&] {
        if (vd_design.empty() == vd_scheme.empty())
            throw std::runtime_error("pass exactly one of --design / --scheme");
        BinaryDesign d;
        if (!vd_design.empty()) {
            d = BinaryDesign::load_string(slurp(vd_design));
        } else {
            std::istringstream is(slurp(vd_scheme));
            UniversalScheme s = UniversalScheme::load(is);
            if (vd_which == "stage1") d = s.stage1;
            else if (vd_which == "stage2") d = s.stage2;
            else throw std::runtime_error("--which must be stage1 or stage2");
        }
        bool verdict;
        std::ostringstream params;
        if (vd_prop == "distinguishable") {
            verdict = check_distinguishable(d, vd_k, vd_l, vd_budget);
            params << "k=" << vd_k << " l=" << vd_l;
        } else if (vd_prop == "strongly-distinguishable") {
            verdict = check_strongly_distinguishable(d, vd_k, vd_eps, vd_budget);
            params << "k=" << vd_k << " eps=" << vd_eps;
        } else if (vd_prop == "list-uf") {
            verdict = check_list_uf(d, vd_k, vd_l, vd_alpha, vd_budget);
            params << "k=" << vd_k << " l=" << vd_l << " alpha=" << vd_alpha;
        } else if (vd_prop == "strongly-list-uf") {
            verdict = check_strongly_list_uf(d, vd_k, vd_eps, vd_alpha, vd_budget);
            params << "k=" << vd_k << " eps=" << vd_eps << " alpha=" << vd_alpha;
        } else {
            throw std::runtime_error("unknown property: " + vd_prop);
        }
        std::cout << verdict_record(d, vd_prop, params.str(), verdict) << "\n";
        if (!verdict) std::exit(2);
    });

    // trial
    auto* tr = app.add_subcommand("trial", "run seeded recovery trials and print a report");
    TrialConfig tc;
    std::string tr_kind = "ae", tr_model = "gaussian-values", tr_verify = "auto";
    tr->add_option("--scheme-kind", tr_kind, "aa|ae|ee")->required();
    tr->add_option("--n", tc.n, "signal dimension")->required();
    tr->add_option("--k", tc.k, "sparsity bound")->required();
    tr->add_option("--eps", tc.eps, "approximation slack (aa)");
    tr->add_option("--alpha", tc.alpha, "block-height exponent (ee)");
    tr->add_option("--c", tc.c, "tests per tree level constant (ee)");
    tr->add_option("--model", tr_model,
                   "gaussian-values|unit-values|adversarial-cancellation");
    tr->add_option("--trials", tc.trials, "trial count")->required();
    tr->add_option("--seed", tc.seed, "RNG seed");
    tr->add_option("--verify", tr_verify, "verify designs: auto|on|off (aa/ae)");
    tr->add_option("--cap", tc.cap, "decoder candidate cap multiplier (ee)");
    tr->add_option("--tol", tc.tol, "nonzero tolerance");
    tr->add_option("--fixed-sparsity", tc.fixed_sparsity, "use exactly this k' (0 = uniform)");
    tr->callback([&] {
        tc.scheme = trial_scheme_from_string(tr_kind);
        tc.model = signal_model_from_string(tr_model);
        tc.constants.verify = parse_verify(tr_verify);
        const TrialReport rep = run_trials(tc);
        std::cout << "trials=" << rep.trials << " successes=" << rep.successes
                  << " failures=" << rep.failures << " success-rate=" << rep.success_rate()
                  << "\nm=" << rep.m << " mean-column-reads=" << rep.mean_column_reads()
                  << " max-column-reads=" << rep.max_column_reads()
                  << "\nmean-decode-seconds=" << rep.mean_decode_seconds()
                  << " worst-miss-ratio=" << rep.worst_miss_ratio()
                  << " worst-extra-ratio=" << rep.worst_extra_ratio() << "\n";
    });

    // sweep
    auto* sw = app.add_subcommand("sweep", "cross scheme kinds, n, and k; emit one CSV row each");
    std::vector<std::string> sw_kinds;
    std::vector<int> sw_ns, sw_ks;
    TrialConfig sc;
    std::string sw_model = "gaussian-values", sw_out;
    bool sw_no_timing = false;
    sw->add_option("--scheme-kind", sw_kinds, "aa|ae|ee (repeatable)")->required();
    sw->add_option("--n", sw_ns, "signal dimensions (repeatable)")->required();
    sw->add_option("--k", sw_ks, "sparsity bounds (repeatable)")->required();
    sw->add_option("--eps", sc.eps, "approximation slack (aa)");
    sw->add_option("--alpha", sc.alpha, "block-height exponent (ee)");
    sw->add_option("--c", sc.c, "tests per tree level constant (ee)");
    sw->add_option("--model", sw_model, "signal model for every cell");
    sw->add_option("--trials", sc.trials, "trials per cell")->required();
    sw->add_option("--seed", sc.seed, "RNG seed");
    sw->add_option("--cap", sc.cap, "decoder candidate cap multiplier (ee)");
    sw->add_option("--tol", sc.tol, "nonzero tolerance");
    sw->add_option("--fixed-sparsity", sc.fixed_sparsity, "use exactly this k' (0 = uniform)");
    sw->add_flag("--no-timing", sw_no_timing, "write 0 for the timing column (byte-stable)");
    sw->add_option("--out", sw_out, "output file (default stdout)");
    sw->callback([&] {
        sc.model = signal_model_from_string(sw_model);
        std::vector<TrialConfig> grid;
        for (const std::string& kind : sw_kinds)
            for (int n : sw_ns)
                for (int k : sw_ks) {
                    TrialConfig cell = sc;
                    cell.scheme = trial_scheme_from_string(kind);
                    cell.n = n;
                    cell.k = k;
                    grid.push_back(cell);
                }
        spill(sw_out, run_sweep(grid, !sw_no_timing));
    });

    // bib-sim
    auto* bs = app.add_subcommand("bib-sim", "balls-into-bins max-load overflow probability");
    BibConfig bc;
    bc.trials = 10000;
    bc.seed = 1;
    bs->add_option("--balls", bc.balls, "balls thrown")->required();
    bs->add_option("--bins", bc.bins, "bins")->required();
    bs->add_option("--threshold", bc.threshold, "overflow when max load exceeds this")->required();
    bs->add_option("--trials", bc.trials, "independent throws");
    bs->add_option("--seed", bc.seed, "RNG seed");
    bs->callback([&] { std::cout << bib_simulate(bc) << "\n"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
