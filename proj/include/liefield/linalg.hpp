#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace liefield {

/// Dense matrix over Q; exact Gaussian elimination only, desk scale.
class QMatrix {
public:
    QMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<Rational>(cols, Rational(0))) {}

    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rational& operator()(size_t i, size_t j) { return a_[i][j]; }
    const Rational& operator()(size_t i, size_t j) const { return a_[i][j]; }

    /// Row-reduces in place; returns pivot column indices.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = row;
            while (sel < rows_ && a_[sel][col].is_zero()) ++sel;
            if (sel == rows_) continue;
            std::swap(a_[sel], a_[row]);
            Rational inv = a_[row][col].inverse();
            for (size_t j = col; j < cols_; ++j) a_[row][j] *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || a_[i][col].is_zero()) continue;
                Rational f = a_[i][col];
                for (size_t j = col; j < cols_; ++j) a_[i][j] -= f * a_[row][j];
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        QMatrix copy(*this);
        return copy.rref().size();
    }

    /// Basis of the right kernel {x : Ax = 0}, one column vector per element.
    std::vector<std::vector<Rational>> kernel_basis() const {
        QMatrix m(*this);
        std::vector<size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<Rational> v(cols_, Rational(0));
            v[free_col] = Rational(1);
            for (size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -m(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One solution of Ax = b, if any.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("solve: dimension mismatch");
        QMatrix m(rows_, cols_ + 1);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) m(i, j) = a_[i][j];
            m(i, cols_) = b[i];
        }
        std::vector<size_t> pivots = m.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt; // inconsistent
        std::vector<Rational> x(cols_, Rational(0));
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, cols_);
        return x;
    }

    Rational determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
        QMatrix m(*this);
        Rational det(1);
        for (size_t col = 0; col < cols_; ++col) {
            size_t sel = col;
            while (sel < rows_ && m(sel, col).is_zero()) ++sel;
            if (sel == rows_) return Rational(0);
            if (sel != col) {
                std::swap(m.a_[sel], m.a_[col]);
                det = -det;
            }
            det *= m(col, col);
            Rational inv = m(col, col).inverse();
            for (size_t i = col + 1; i < rows_; ++i) {
                if (m(i, col).is_zero()) continue;
                Rational f = m(i, col) * inv;
                for (size_t j = col; j < cols_; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return det;
    }

private:
    size_t rows_, cols_;
    std::vector<std::vector<Rational>> a_;
};

inline QMatrix matrix_product(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix_product: shape mismatch");
    QMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            Rational acc(0);
            for (size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

/// ab - ba.
inline QMatrix matrix_commutator(const QMatrix& a, const QMatrix& b) {
    QMatrix ab = matrix_product(a, b), ba = matrix_product(b, a);
    QMatrix out(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out(i, j) = ab(i, j) - ba(i, j);
    return out;
}

inline size_t rank_of_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    QMatrix m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m.rank();
}

} // namespace liefield
