#include "edocs/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace edocs {

int sign_scalar(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("sign_scalar: non-finite input");
    return a >= 0.0 ? 1 : -1;
}

int nz_scalar(double a, double tol) {
    if (!std::isfinite(a)) throw std::invalid_argument("nz_scalar: non-finite input");
    if (tol < 0.0) throw std::invalid_argument("nz_scalar: negative tolerance");
    return std::abs(a) > tol ? 1 : 0;
}

SparseSignal SparseSignal::make(int dim, std::vector<std::pair<int, double>> entries) {
    if (dim <= 0) throw std::invalid_argument("SparseSignal: dim must be positive");
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [idx, val] = entries[i];
        if (idx < 0 || idx >= dim) throw std::invalid_argument("SparseSignal: index out of range");
        if (i > 0 && entries[i - 1].first == idx) throw std::invalid_argument("SparseSignal: duplicate index");
        if (!std::isfinite(val)) throw std::invalid_argument("SparseSignal: non-finite value");
        if (val == 0.0) throw std::invalid_argument("SparseSignal: explicit zero entry");
    }
    SparseSignal s;
    s.dim = dim;
    s.entries = std::move(entries);
    return s;
}

std::vector<int> SparseSignal::support() const {
    std::vector<int> out;
    out.reserve(entries.size());
    for (const auto& [idx, val] : entries) out.push_back(idx);
    return out;
}

int MeasurementBits::count() const {
    int c = 0;
    for (auto b : bits) c += b != 0;
    return c;
}

std::string MeasurementBits::to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

MeasurementBits MeasurementBits::from_string(const std::string& s) {
    MeasurementBits y;
    y.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("MeasurementBits: expected 0/1 characters");
        y.bits.push_back(static_cast<std::uint8_t>(c == '1'));
    }
    return y;
}

void BinaryDesign::validate() const {
    if (rows < 0 || cols < 0) throw std::invalid_argument("BinaryDesign: negative shape");
    if (static_cast<int>(col_supports.size()) != cols)
        throw std::invalid_argument("BinaryDesign: column count mismatch");
    if (col_weight < 0) throw std::invalid_argument("BinaryDesign: negative column weight");
    for (const auto& sup : col_supports) {
        if (col_weight > 0 && static_cast<int>(sup.size()) != col_weight)
            throw std::invalid_argument("BinaryDesign: column weight violated");
        for (std::size_t i = 0; i < sup.size(); ++i) {
            if (sup[i] < 0 || sup[i] >= rows) throw std::invalid_argument("BinaryDesign: row index out of range");
            if (i > 0 && sup[i - 1] >= sup[i]) throw std::invalid_argument("BinaryDesign: column support not strictly increasing");
        }
    }
}

void BinaryDesign::save(std::ostream& os) const {
    os << cols << ' ' << rows << ' ' << col_weight << '\n';
    for (const auto& sup : col_supports) {
        for (std::size_t i = 0; i < sup.size(); ++i) {
            if (i) os << ' ';
            os << sup[i];
        }
        os << '\n';
    }
}

BinaryDesign BinaryDesign::load(std::istream& is) {
    BinaryDesign d;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("BinaryDesign: missing header");
    {
        std::istringstream hs(line);
        if (!(hs >> d.cols >> d.rows >> d.col_weight))
            throw std::invalid_argument("BinaryDesign: bad header");
    }
    d.col_supports.resize(static_cast<std::size_t>(d.cols));
    for (int j = 0; j < d.cols; ++j) {
        if (!std::getline(is, line)) throw std::invalid_argument("BinaryDesign: truncated column list");
        std::istringstream ls(line);
        int r;
        while (ls >> r) d.col_supports[static_cast<std::size_t>(j)].push_back(r);
    }
    d.validate();
    return d;
}

std::string BinaryDesign::save_string() const {
    std::ostringstream os;
    save(os);
    return os.str();
}

BinaryDesign BinaryDesign::load_string(const std::string& text) {
    std::istringstream is(text);
    return load(is);
}

int BlockSensingMatrix::total_rows() const {
    int r = 0;
    for (const auto& b : blocks) r += b.rows;
    return r;
}

MeasurementBits measure_binary(const BinaryDesign& a, const SparseSignal& x, double tol) {
    if (a.cols != x.dim) throw std::invalid_argument("measure_binary: dimension mismatch");
    std::vector<double> acc(static_cast<std::size_t>(a.rows), 0.0);
    for (const auto& [j, v] : x.entries)
        for (int r : a.col_supports[static_cast<std::size_t>(j)]) acc[static_cast<std::size_t>(r)] += v;
    MeasurementBits y;
    y.bits.resize(static_cast<std::size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i)
        y.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(nz_scalar(acc[static_cast<std::size_t>(i)], tol));
    return y;
}

MeasurementBits measure_blocks(const BlockSensingMatrix& a, const SparseSignal& x, double tol) {
    if (a.dim != x.dim) throw std::invalid_argument("measure_blocks: dimension mismatch");
    MeasurementBits y;
    y.bits.reserve(static_cast<std::size_t>(a.total_rows()));
    std::vector<double> acc;
    for (const auto& blk : a.blocks) {
        acc.assign(static_cast<std::size_t>(blk.rows), 0.0);
        // Both lists are sorted; walk them together.
        std::size_t p = 0, q = 0;
        while (p < blk.support.size() && q < x.entries.size()) {
            const int bj = blk.support[p];
            const int xj = x.entries[q].first;
            if (bj < xj) {
                ++p;
            } else if (bj > xj) {
                ++q;
            } else {
                const double v = x.entries[q].second;
                for (int r = 0; r < blk.rows; ++r) acc[static_cast<std::size_t>(r)] += blk.coeff(r, static_cast<int>(p)) * v;
                ++p;
                ++q;
            }
        }
        for (int r = 0; r < blk.rows; ++r)
            y.bits.push_back(static_cast<std::uint8_t>(nz_scalar(acc[static_cast<std::size_t>(r)], tol)));
    }
    return y;
}

}  // namespace edocs
