#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dpde {

/// Dense row-major matrix of doubles. Row i is a contiguous span, which is
/// the layout every batch operation iterates over.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double>& storage() { return data_; }
    const std::vector<double>& storage() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// 0/1 matrix marking which genes of each trial row take mutant values.
class CrossoverMask {
public:
    CrossoverMask() = default;
    CrossoverMask(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool test(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) {
        bits_[i * cols_ + j] = static_cast<std::uint8_t>(v);
    }

    std::span<std::uint8_t> row(std::size_t i) { return {bits_.data() + i * cols_, cols_}; }
    std::span<const std::uint8_t> row(std::size_t i) const {
        return {bits_.data() + i * cols_, cols_};
    }

    std::size_t row_popcount(std::size_t i) const {
        std::size_t n = 0;
        for (std::uint8_t b : row(i)) {
            n += b;
        }
        return n;
    }

    bool operator==(const CrossoverMask&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

} // namespace dpde
