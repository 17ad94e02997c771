#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edocs/foreach.hpp"
#include "edocs/rng.hpp"
#include "toy_data.hpp"

using namespace edocs;

namespace {

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

}  // namespace

TEST_SUITE("foreach") {

TEST_CASE("hilbert block reproduces the printed 3x8 example") {
    const AstimBlock b = build_astim({toy::kHilbertSupport.begin(), toy::kHilbertSupport.end()},
                                     3, 99, AstimKind::Hilbert);
    REQUIRE(b.support.size() == 4);
    for (int r = 0; r < 3; ++r) {
        std::size_t pos = 0;
        for (int j = 0; j < 8; ++j) {
            const double want = toy::kHilbertDense[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            if (pos < b.support.size() && b.support[pos] == j) {
                CHECK(b.coeff(r, static_cast<int>(pos)) == want);
                ++pos;
            } else {
                CHECK(want == 0.0);
            }
        }
    }
}

TEST_CASE("gaussian block entries are keyed by item, not position") {
    const AstimBlock wide = build_astim({1, 2, 4, 7}, 3, 42, AstimKind::Gaussian);
    const AstimBlock narrow = build_astim({2, 7}, 3, 42, AstimKind::Gaussian);
    for (int r = 0; r < 3; ++r) {
        CHECK(wide.coeff(r, 1) == narrow.coeff(r, 0));  // item 2
        CHECK(wide.coeff(r, 3) == narrow.coeff(r, 1));  // item 7
    }
    const AstimBlock reseeded = build_astim({2, 7}, 3, 43, AstimKind::Gaussian);
    CHECK(narrow.coeff(0, 0) != reseeded.coeff(0, 0));
}

TEST_CASE("astim construction validates its input") {
    CHECK_THROWS_AS(build_astim({}, 3, 1, AstimKind::Gaussian), std::invalid_argument);
    CHECK_THROWS_AS(build_astim({1, 2}, 0, 1, AstimKind::Gaussian), std::invalid_argument);
    CHECK_THROWS_AS(build_astim({2, 1}, 3, 1, AstimKind::Gaussian), std::invalid_argument);
    CHECK_THROWS_AS(build_astim({1, 1}, 3, 1, AstimKind::Gaussian), std::invalid_argument);
    CHECK_THROWS_AS(build_astim({-1, 1}, 3, 1, AstimKind::Gaussian), std::invalid_argument);
}

TEST_CASE("block scheme arithmetic at the large benchmark point") {
    const EeScheme s = build_ee(1 << 16, 64, 3.0, 16, 1);
    CHECK(s.n_pad == 1 << 16);
    CHECK(s.k_pad == 64);
    CHECK(s.k_alpha == 11);
    CHECK(s.test_count() == 16384);
    CHECK(s.total_measurements() == 180224);
    CHECK(s.regime_ok);
}

TEST_CASE("block scheme arithmetic at a desk-scale point") {
    const EeScheme s = build_ee(8, 2, 3.0, 4, 7);
    CHECK(s.k_alpha == 9);
    CHECK(s.test_count() == 24);
    CHECK(s.total_measurements() == 216);

    const EeScheme padded = build_ee(10, 3, 3.0, 4, 7);
    CHECK(padded.n_pad == 16);
    CHECK(padded.k_pad == 4);

    const EeScheme thin = build_ee(1 << 16, 2, 3.0, 16, 7);
    CHECK_FALSE(thin.regime_ok);  // k far below the sweet-spot threshold

    CHECK_THROWS_AS(build_ee(3, 1, 3.0, 16, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_ee(16, 16, 3.0, 16, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_ee(16, 2, 1.0, 16, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_ee(16, 2, 3.0, 0, 1), std::invalid_argument);
}

TEST_CASE("scheme text form round-trips and cross-checks") {
    const EeScheme s = build_ee(100, 5, 2.5, 8, 77);
    std::ostringstream os;
    s.save(os);
    std::istringstream is(os.str());
    const EeScheme t = EeScheme::load(is);
    CHECK(t.n == s.n);
    CHECK(t.k == s.k);
    CHECK(t.alpha == s.alpha);
    CHECK(t.c == s.c);
    CHECK(t.k_alpha == s.k_alpha);
    CHECK(t.seed == s.seed);
    CHECK(t.fbs.seed == s.fbs.seed);

    std::string text = os.str();
    const std::string needle = "k_alpha " + std::to_string(s.k_alpha);
    text.replace(text.find(needle), needle.size(), "k_alpha 99");
    std::istringstream bad(text);
    CHECK_THROWS_AS(EeScheme::load(bad), std::invalid_argument);

    std::istringstream junk("not a scheme\n");
    CHECK_THROWS_AS(EeScheme::load(junk), std::invalid_argument);
}

TEST_CASE("lazy measurement equals the materialized block stack") {
    const EeScheme s = build_ee(16, 2, 2.5, 4, 5);
    const BlockSensingMatrix blocks = materialize_blocks(s);
    CHECK(blocks.dim == 16);
    CHECK(static_cast<int>(blocks.blocks.size()) == s.test_count());
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SparseSignal x = gaussian_signal(16, {static_cast<int>(seed % 16),
                                                    static_cast<int>((seed * 7 + 3) % 16)},
                                               seed + 100);
        CHECK(measure(s, x) == measure_blocks(blocks, x));
    }
}

TEST_CASE("some tests are empty and their blocks reflect it") {
    const EeScheme s = build_ee(16, 2, 2.5, 4, 5);
    int empties = 0;
    for (int t = 0; t < s.test_count(); ++t) {
        const AstimBlock b = s.block(t);
        if (b.support.empty()) {
            ++empties;
            CHECK(b.rows == s.k_alpha);
            CHECK(b.coeffs.empty());
        }
    }
    CHECK(empties > 0);  // more slots than nodes at the top level
}

TEST_CASE("touched blocks never measure to all-zeros under generic values") {
    const EeScheme s = build_ee(16, 2, 2.5, 4, 5);
    const BlockSensingMatrix blocks = materialize_blocks(s);
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Rng rng(seed_combine(9, trial));
        const int kp = 1 + rng.below_int(2);
        const SparseSignal x = gaussian_signal(16, sample_distinct(rng, 16, kp), trial + 500);
        const MeasurementBits y = measure(s, x);
        for (int t = 0; t < s.test_count(); ++t) {
            const auto& sup = blocks.blocks[static_cast<std::size_t>(t)].support;
            int hits = 0;
            for (const auto& [j, v] : x.entries)
                hits += std::binary_search(sup.begin(), sup.end(), j);
            if (hits == 0) continue;
            REQUIRE(hits <= s.k_alpha);
            int on = 0;
            for (int r = 0; r < s.k_alpha; ++r)
                on += y.bits[static_cast<std::size_t>(t * s.k_alpha + r)];
            CHECK(on > 0);
        }
    }
}

TEST_CASE("planted supports decode exactly at desk scale") {
    const EeScheme s = build_ee(64, 4, 3.0, 16, 3);
    CHECK(s.k_alpha == 9);
    const std::vector<std::vector<int>> supports = {{9}, {5, 17}, {5, 17, 42, 63}};
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const SparseSignal x = gaussian_signal(64, supports[i], 300 + i);
        const GtResult res = decode_ee(s, measure(s, x), 8);
        CHECK_FALSE(res.failed);
        CHECK(res.positives == supports[i]);
    }
}

TEST_CASE("padding indices are filtered from decode output") {
    const EeScheme s = build_ee(10, 2, 3.0, 8, 11);
    const std::vector<int> support = {0, 9};
    const SparseSignal x = gaussian_signal(10, support, 44);
    const GtResult res = decode_ee(s, measure(s, x), 8);
    CHECK_FALSE(res.failed);
    CHECK(res.positives == support);
    for (int j : res.positives) CHECK(j < 10);

    CHECK_THROWS_AS(measure(s, SparseSignal::make(16, {{12, 1.0}})), std::invalid_argument);
    MeasurementBits wrong;
    wrong.bits.assign(3, 0);
    CHECK_THROWS_AS(decode_ee(s, wrong, 8), std::invalid_argument);
}

}  // TEST_SUITE
