#pragma once

// Sobol low-discrepancy points for swarm initialization.
//
// Direction numbers are the Joe-Kuo "new-joe-kuo-6" set, embedded from
// data/new-joe-kuo-6.8192.txt (see tools/gen_sobol_header.py). Points are
// emitted in Gray-code order starting at index 0, so for every m the first
// 2^m points of each coordinate form a (0, m, 1)-net.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ppso/detail/joe_kuo_table.hpp"
#include "ppso/error.hpp"
#include "ppso/matrix.hpp"
#include "ppso/rng.hpp"

namespace ppso {

inline constexpr unsigned kSobolBits = 32;

/// Primitive polynomial and initial direction numbers for one dimension.
struct DirectionRow {
    std::uint32_t degree = 0;       // s
    std::uint32_t coefficients = 0; // a
    std::vector<std::uint32_t> initial; // m_1..m_s
};

class DirectionTable {
public:
    /// Table compiled into the library.
    static const DirectionTable& embedded() {
        static const DirectionTable table = [] {
            DirectionTable t;
            const std::span<const std::uint32_t> packed(detail::kJoeKuoPacked);
            std::size_t pos = 0;
            while (pos < packed.size()) {
                DirectionRow row;
                row.degree = packed[pos++];
                row.coefficients = packed[pos++];
                row.initial.assign(packed.begin() + static_cast<std::ptrdiff_t>(pos),
                                   packed.begin() + static_cast<std::ptrdiff_t>(pos + row.degree));
                pos += row.degree;
                t.rows_.push_back(std::move(row));
            }
            return t;
        }();
        return table;
    }

    /// Parse the published "d s a m_i" text format. Dimension 1 is implicit.
    static DirectionTable parse(std::istream& in) {
        DirectionTable t;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream fields(line);
            std::uint64_t d = 0;
            if (!(fields >> d)) {
                if (t.rows_.empty()) {
                    continue;  // header or blank line
                }
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    continue;
                }
                throw FormatError("direction table line " + std::to_string(line_no) + ": expected dimension");
            }
            if (d != t.rows_.size() + 2) {
                throw FormatError("direction table line " + std::to_string(line_no) + ": dimension " +
                                  std::to_string(d) + " out of sequence");
            }
            DirectionRow row;
            if (!(fields >> row.degree >> row.coefficients) || row.degree == 0 || row.degree >= kSobolBits) {
                throw FormatError("direction table line " + std::to_string(line_no) + ": bad degree");
            }
            for (std::uint32_t i = 1; i <= row.degree; ++i) {
                std::uint32_t m = 0;
                if (!(fields >> m) || (m & 1U) == 0 || m >= (1ULL << i)) {
                    throw FormatError("direction table line " + std::to_string(line_no) + ": bad m_" +
                                      std::to_string(i));
                }
                row.initial.push_back(m);
            }
            t.rows_.push_back(std::move(row));
        }
        return t;
    }

    static DirectionTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open direction table " + path);
        }
        return parse(in);
    }

    /// Number of supported dimensions, including the implicit first one.
    std::size_t dimensions() const noexcept { return rows_.size() + 1; }

    /// Row for dimension d (2-based; dimension 1 has no row).
    const DirectionRow& row(std::size_t d) const { return rows_.at(d - 2); }

    /// Scaled direction integers v_1..v_32 for 0-based dimension index `dim`.
    std::array<std::uint32_t, kSobolBits> directions(std::size_t dim) const {
        std::array<std::uint32_t, kSobolBits> v{};
        if (dim >= dimensions()) {
            throw UnsupportedDimension("Sobol dimension " + std::to_string(dim + 1) + " exceeds table size " +
                                       std::to_string(dimensions()));
        }
        if (dim == 0) {
            for (unsigned i = 0; i < kSobolBits; ++i) {
                v[i] = 1U << (kSobolBits - 1 - i);
            }
            return v;
        }
        const DirectionRow& r = rows_[dim - 1];
        const unsigned s = r.degree;
        for (unsigned i = 0; i < s && i < kSobolBits; ++i) {
            v[i] = r.initial[i] << (kSobolBits - 1 - i);
        }
        for (unsigned i = s; i < kSobolBits; ++i) {
            std::uint32_t value = v[i - s] ^ (v[i - s] >> s);
            for (unsigned k = 1; k < s; ++k) {
                if ((r.coefficients >> (s - 1 - k)) & 1U) {
                    value ^= v[i - k];
                }
            }
            v[i] = value;
        }
        return v;
    }

    bool operator==(const DirectionTable& other) const {
        if (rows_.size() != other.rows_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& a = rows_[i];
            const auto& b = other.rows_[i];
            if (a.degree != b.degree || a.coefficients != b.coefficients || a.initial != b.initial) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<DirectionRow> rows_;
};

/// Sequential Sobol generator with an optional seeded random shift.
///
/// seed == 0 yields the plain sequence. Any other seed adds a per-dimension
/// uniform offset modulo 1, applied on the 2^-32 lattice so the result stays
/// exactly representable and inside [0, 1).
class SobolStream {
public:
    explicit SobolStream(std::size_t dimension, std::uint64_t seed = 0,
                         const DirectionTable& table = DirectionTable::embedded())
        : dimension_(dimension), state_(dimension, 0U), shift_(dimension, 0U) {
        if (dimension == 0) {
            throw DimensionError("Sobol dimension must be positive");
        }
        if (dimension > table.dimensions()) {
            throw UnsupportedDimension("Sobol dimension " + std::to_string(dimension) + " exceeds table size " +
                                       std::to_string(table.dimensions()));
        }
        directions_.reserve(dimension);
        for (std::size_t d = 0; d < dimension; ++d) {
            directions_.push_back(table.directions(d));
        }
        if (seed != 0) {
            Rng rng(seed, 0x50b01ULL);
            for (auto& s : shift_) {
                s = static_cast<std::uint32_t>(rng.bits() >> 32);
            }
        }
    }

    std::size_t dimension() const noexcept { return dimension_; }
    std::uint64_t next_index() const noexcept { return index_; }
    std::span<const std::uint32_t> shift() const noexcept { return shift_; }

    /// Write the point at next_index() into `out` and advance.
    void next(std::span<double> out) {
        if (out.size() != dimension_) {
            throw DimensionError("Sobol output span has wrong length");
        }
        if (index_ >= (1ULL << kSobolBits)) {
            throw NumericError("Sobol sequence exhausted");
        }
        for (std::size_t d = 0; d < dimension_; ++d) {
            const std::uint32_t shifted = state_[d] + shift_[d];  // wraps modulo 2^32
            out[d] = static_cast<double>(shifted) * 0x1.0p-32;
        }
        const unsigned bit = static_cast<unsigned>(std::countr_one(index_));
        if (bit < kSobolBits) {
            for (std::size_t d = 0; d < dimension_; ++d) {
                state_[d] ^= directions_[d][bit];
            }
        }
        ++index_;
    }

private:
    std::size_t dimension_;
    std::uint64_t index_ = 0;
    std::vector<std::uint32_t> state_;
    std::vector<std::uint32_t> shift_;
    std::vector<std::array<std::uint32_t, kSobolBits>> directions_;
};

/// First `count` points of the (shifted) sequence as a count x dim matrix.
inline Matrix sobol_points(std::size_t dim, std::size_t count, std::uint64_t seed,
                           const DirectionTable& table = DirectionTable::embedded()) {
    if (count == 0) {
        throw ConfigError("Sobol point count must be positive");
    }
    SobolStream stream(dim, seed, table);
    Matrix points(count, dim);
    for (std::size_t i = 0; i < count; ++i) {
        stream.next(points.row(i));
    }
    return points;
}

inline void check_bounds(std::span<const double> lb, std::span<const double> ub) {
    if (lb.size() != ub.size()) {
        throw DimensionError("lower and upper bounds differ in length");
    }
    for (std::size_t d = 0; d < lb.size(); ++d) {
        if (!(lb[d] < ub[d])) {
            throw InvalidBounds("bound " + std::to_string(d) + ": lower " + std::to_string(lb[d]) +
                                " is not below upper " + std::to_string(ub[d]));
        }
    }
}

/// Affine map of unit-cube points into [lb_d, ub_d).
inline Matrix scale_to_bounds(const Matrix& points, std::span<const double> lb, std::span<const double> ub) {
    check_bounds(lb, ub);
    if (lb.size() != points.cols()) {
        throw DimensionError("bounds length " + std::to_string(lb.size()) + " does not match point dimension " +
                             std::to_string(points.cols()));
    }
    Matrix out(points.rows(), points.cols());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t d = 0; d < points.cols(); ++d) {
            double value = lb[d] + points(i, d) * (ub[d] - lb[d]);
            if (value >= ub[d]) {
                value = std::nextafter(ub[d], lb[d]);
            }
            out(i, d) = value;
        }
    }
    return out;
}

}  // namespace ppso
