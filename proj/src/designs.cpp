#include "edocs/designs.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "edocs/rng.hpp"

namespace edocs {

int signature_length(int n) {
    if (n < 2) throw std::invalid_argument("signature: need n >= 2");
    return std::bit_width(static_cast<unsigned>(n - 1));
}

std::uint64_t signature_word(int j, int L) {
    std::uint64_t w = 0;
    for (int r = 0; r < L; ++r) {
        const int bit = (j >> (L - 1 - r)) & 1;
        if (bit) w |= 1ULL << r;
        else w |= 1ULL << (L + r);
    }
    return w;
}

SignatureMatrix build_signature(int n) {
    const int L = signature_length(n);
    SignatureMatrix u;
    u.n = n;
    u.L = L;
    u.mat.rows = 2 * L;
    u.mat.cols = n;
    u.mat.col_weight = L;
    u.mat.col_supports.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& sup = u.mat.col_supports[static_cast<std::size_t>(j)];
        sup.reserve(static_cast<std::size_t>(L));
        std::uint64_t w = signature_word(j, L);
        while (w) {
            sup.push_back(std::countr_zero(w));
            w &= w - 1;
        }
    }
    u.mat.validate();
    return u;
}

std::optional<int> decode_singleton(std::span<const std::uint8_t> block, int n) {
    const int L = signature_length(n);
    if (static_cast<int>(block.size()) != 2 * L)
        throw std::invalid_argument("decode_singleton: wrong block length");
    int weight = 0;
    for (auto b : block) weight += b != 0;
    if (weight != L) return std::nullopt;
    int value = 0;
    for (int r = 0; r < L; ++r) {
        if (block[static_cast<std::size_t>(L + r)] == block[static_cast<std::size_t>(r)]) return std::nullopt;
        value |= static_cast<int>(block[static_cast<std::size_t>(r)]) << (L - 1 - r);
    }
    if (value >= n) return std::nullopt;
    return value;
}

BinaryDesign build_random_cw_design(int m0, int n, int d, std::uint64_t seed) {
    if (m0 < 1 || n < 1) throw std::invalid_argument("build_random_cw_design: empty shape");
    if (d < 1 || d > m0) throw std::invalid_argument("build_random_cw_design: weight out of range");
    BinaryDesign a;
    a.rows = m0;
    a.cols = n;
    a.col_weight = d;
    a.col_supports.resize(static_cast<std::size_t>(n));
    Rng rng(seed);
    // Partial Fisher-Yates per column over a shared pool, undone after each
    // draw so the pool never needs re-initialization.
    std::vector<int> pool(static_cast<std::size_t>(m0));
    for (int i = 0; i < m0; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> picks(static_cast<std::size_t>(d));
    for (int j = 0; j < n; ++j) {
        for (int t = 0; t < d; ++t) {
            const int r = t + rng.below_int(m0 - t);
            std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(r)]);
            picks[static_cast<std::size_t>(t)] = r;
        }
        auto& sup = a.col_supports[static_cast<std::size_t>(j)];
        sup.assign(pool.begin(), pool.begin() + d);
        std::sort(sup.begin(), sup.end());
        for (int t = d - 1; t >= 0; --t)
            std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(picks[static_cast<std::size_t>(t)])]);
    }
    return a;
}

BinaryDesign magnify(const BinaryDesign& m, const SignatureMatrix& u) {
    m.validate();
    if (m.cols != u.n) throw std::invalid_argument("magnify: column count mismatch");
    const int block = u.mat.rows;  // 2L
    BinaryDesign out;
    out.rows = block * m.rows;
    out.cols = m.cols;
    out.col_weight = m.col_weight > 0 ? m.col_weight * u.L : 0;
    out.col_supports.resize(static_cast<std::size_t>(m.cols));
    for (int j = 0; j < m.cols; ++j) {
        const auto& sig = u.mat.col_supports[static_cast<std::size_t>(j)];
        auto& sup = out.col_supports[static_cast<std::size_t>(j)];
        sup.reserve(m.col_supports[static_cast<std::size_t>(j)].size() * sig.size());
        for (int i : m.col_supports[static_cast<std::size_t>(j)])
            for (int r : sig) sup.push_back(i * block + r);
    }
    out.validate();
    return out;
}

namespace {

int ceil_pos(double v) {
    const int r = static_cast<int>(std::ceil(v));
    if (r < 1) throw std::invalid_argument("sizing: non-positive result");
    return r;
}

void check_common(int n, int k, double c1, double c2, double uf_c1, double uf_c2) {
    if (n < 2) throw std::invalid_argument("sizing: need n >= 2");
    if (k < 1 || k >= n) throw std::invalid_argument("sizing: need 1 <= k < n");
    if (c1 <= 0 || c2 <= 0 || uf_c1 <= 0 || uf_c2 <= 0)
        throw std::invalid_argument("sizing: constants must be positive");
}

}  // namespace

DesignParams sizing_aa(int n, int k, double eps, double c1, double c2, double uf_c1, double uf_c2) {
    check_common(n, k, c1, c2, uf_c1, uf_c2);
    if (!(eps > 0.0) || eps > 2.0) throw std::invalid_argument("sizing_aa: eps out of (0, 2]");
    const double lnr = std::log(static_cast<double>(n) / k);
    const double f = 2.0 / eps;
    DesignParams p;
    p.n = n;
    p.k = k;
    p.eps = eps;
    p.c1 = c1;
    p.c2 = c2;
    p.uf_c1 = uf_c1;
    p.uf_c2 = uf_c2;
    p.m1 = ceil_pos(c1 * k * f * lnr);
    p.d1 = ceil_pos(c2 * f * lnr);
    p.m2 = ceil_pos(uf_c1 * k * f * lnr);
    p.d2 = ceil_pos(uf_c2 * f * lnr);
    return p;
}

DesignParams sizing_ae(int n, int k, double c1, double c2, double uf_c1, double uf_c2) {
    check_common(n, k, c1, c2, uf_c1, uf_c2);
    const double lnr = std::log(static_cast<double>(n) / k);
    DesignParams p;
    p.n = n;
    p.k = k;
    p.eps = 0.0;
    p.c1 = c1;
    p.c2 = c2;
    p.uf_c1 = uf_c1;
    p.uf_c2 = uf_c2;
    p.m1 = ceil_pos(c1 * k * static_cast<double>(k) * lnr);
    p.d1 = ceil_pos(c2 * k * lnr);
    p.m2 = ceil_pos(uf_c1 * k * static_cast<double>(k) * lnr);
    p.d2 = ceil_pos(uf_c2 * k * lnr);
    return p;
}

std::string DesignParams::to_kv() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << n << " k=" << k << " eps=" << eps << " alpha_uf=" << alpha_uf
       << " c1=" << c1 << " c2=" << c2 << " uf_c1=" << uf_c1 << " uf_c2=" << uf_c2
       << " m1=" << m1 << " d1=" << d1 << " m2=" << m2 << " d2=" << d2;
    return os.str();
}

DesignParams DesignParams::from_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        const auto pos = tok.find('=');
        if (pos == std::string::npos) throw std::invalid_argument("DesignParams: bad token " + tok);
        kv[tok.substr(0, pos)] = tok.substr(pos + 1);
    }
    DesignParams p;
    auto geti = [&](const char* key, int& out) { out = std::stoi(kv.at(key)); };
    auto getd = [&](const char* key, double& out) { out = std::stod(kv.at(key)); };
    geti("n", p.n);
    geti("k", p.k);
    getd("eps", p.eps);
    getd("alpha_uf", p.alpha_uf);
    getd("c1", p.c1);
    getd("c2", p.c2);
    getd("uf_c1", p.uf_c1);
    getd("uf_c2", p.uf_c2);
    geti("m1", p.m1);
    geti("d1", p.d1);
    geti("m2", p.m2);
    geti("d2", p.d2);
    return p;
}

}  // namespace edocs
