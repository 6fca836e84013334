#pragma once

#include "gsnc/rational.hpp"

#include <cstddef>
#include <vector>

namespace gsnc {

// Dense matrix over Q. A linear map f: V -> W is stored with one row per
// source basis vector: entry (i, j) is the coefficient of the j-th target
// basis vector in f(v_i). Applying f then g is mat(f) * mat(g).
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const QMatrix& other) const;
    bool operator!=(const QMatrix& other) const { return !(*this == other); }

    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator+(const QMatrix& rhs) const;
    QMatrix operator-() const;
    QMatrix scaled(const Rational& c) const;
    QMatrix transposed() const;

    // Exact rank by fraction-free (Bareiss) elimination on the
    // denominator-cleared integer matrix. No tolerances exist.
    std::size_t rank() const;

    // Gauss-Jordan inverse; throws std::domain_error when singular.
    QMatrix inverse() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace gsnc
