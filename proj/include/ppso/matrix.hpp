#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppso/error.hpp"

namespace ppso {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    void append_row(std::span<const double> values) {
        if (rows_ == 0 && cols_ == 0) {
            cols_ = values.size();
        }
        if (values.size() != cols_) {
            throw DimensionError("row length " + std::to_string(values.size()) + " does not match " +
                                 std::to_string(cols_) + " columns");
        }
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace ppso
