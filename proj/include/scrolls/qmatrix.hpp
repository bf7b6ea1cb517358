#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scrolls {

/// Dense matrix over the rationals: the value of a PolyMatrix at a point.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw InvalidInput("ragged rational matrix");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Rational> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    void append_row(const std::vector<Rational>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw InvalidInput("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    bool operator==(const QMatrix&) const = default;

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
        QMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    /// Reduced row echelon form; returns the pivot columns.
    std::vector<std::size_t> rref_in_place() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
            Rational inv = 1 / (*this)(r, c);
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0) continue;
                Rational f = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    QMatrix rref() const {
        QMatrix m = *this;
        m.rref_in_place();
        return m;
    }

    std::size_t rank() const {
        QMatrix m = *this;
        return m.rref_in_place().size();
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    QMatrix row_basis() const {
        QMatrix m = *this;
        std::size_t r = m.rref_in_place().size();
        QMatrix out(r, cols_);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = m(i, j);
        return out;
    }

    /// Rows form a basis of {y : this * y^T = 0}.
    QMatrix kernel() const {
        QMatrix m = *this;
        auto pivots = m.rref_in_place();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        QMatrix out(0, cols_);
        out.cols_ = cols_;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rational> y(cols_, Rational(0));
            y[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = -m(i, f);
            out.append_row(y);
        }
        return out;
    }

    Rational determinant() const {
        if (rows_ != cols_) throw InvalidInput("determinant of non-square matrix");
        QMatrix m = *this;
        Rational det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) return 0;
            if (p != c) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m(i, c) == 0) continue;
                Rational f = m(i, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return det;
    }

    std::optional<QMatrix> inverse() const {
        if (rows_ != cols_) throw InvalidInput("inverse of non-square matrix");
        QMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = 1;
        }
        auto pivots = aug.rref_in_place();
        if (pivots.size() < rows_ || pivots.back() >= cols_) return std::nullopt;
        QMatrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).get_str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Stack two rational matrices with equal column counts.
inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw InvalidInput("column count mismatch in vstack");
    QMatrix r = a;
    for (std::size_t i = 0; i < b.rows(); ++i) r.append_row(b.row(i));
    return r;
}

/// Row spaces equal (exact).
inline bool rowspan_equal(const QMatrix& a, const QMatrix& b) {
    std::size_t ra = a.rank(), rb = b.rank();
    return ra == rb && vstack(a, b).rank() == ra;
}

} // namespace scrolls
