#include "gsnc/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace gsnc {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j)
            m.at(i, j) = rows[i][j];
    }
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool QMatrix::operator==(const QMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix shape mismatch in product");
    QMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix shape mismatch in sum");
    QMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

QMatrix QMatrix::operator-() const {
    QMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = -data_[i];
    return out;
}

QMatrix QMatrix::scaled(const Rational& c) const {
    QMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = c * data_[i];
    return out;
}

QMatrix QMatrix::transposed() const {
    QMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.at(j, i) = at(i, j);
    return out;
}

std::size_t QMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0)
        return 0;

    // Clear denominators row by row; row scaling does not change the rank.
    std::vector<std::vector<Int>> m(rows_, std::vector<Int>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
        Int lcm_den = 1;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Int& d = denominator(at(i, j));
            lcm_den = lcm(lcm_den, d);
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational scaled_entry = at(i, j) * lcm_den;
            m[i][j] = numerator(scaled_entry);
        }
    }

    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows_)
            continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            for (std::size_t j = c + 1; j < cols_; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_)
        throw std::domain_error("inverse of non-square matrix");
    const std::size_t n = rows_;
    QMatrix a(*this);
    QMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a.at(pivot, c) == 0)
            ++pivot;
        if (pivot == n)
            throw std::domain_error("singular matrix");
        if (pivot != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(c, j), a.at(pivot, j));
                std::swap(inv.at(c, j), inv.at(pivot, j));
            }
        const Rational p = a.at(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(c, j) /= p;
            inv.at(c, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a.at(i, c) == 0)
                continue;
            const Rational f = a.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::string QMatrix::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j)
            out << (j ? " " : "") << rational_to_string(at(i, j));
    }
    out << "]";
    return out.str();
}

}  // namespace gsnc
