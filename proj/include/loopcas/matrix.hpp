#pragma once

// Dense exact matrices over Rational with Gauss-Jordan elimination.
// Dimensions here stay small (tensor modules of a handful of factors), so
// dense storage and fraction-free-naive pivoting are fine.

#include "loopcas/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_scalar(const Rational& c) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? c : Rational())) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix scaled(const Rational& c) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b(k, j);
                    if (!bkj.is_zero()) r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
        std::vector<Rational> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    // Reduced row-echelon form in place; returns pivot column per pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t p = row;
            while (p < rows_ && (*this)(p, col).is_zero()) ++p;
            if (p == rows_) continue;
            swap_rows(p, row);
            Rational inv = (*this)(row, col).inverse();
            for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row) continue;
                Rational f = (*this)(i, col);
                if (f.is_zero()) continue;
                for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Canonical kernel basis: vectors come out of the RREF with free
    // coordinates in ascending column order, then are themselves reduced so
    // the basis is deterministic.
    std::vector<std::vector<Rational>> nullspace() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<Rational> v(cols_);
            v[free_col] = Rational(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free_col);
            basis.push_back(std::move(v));
        }
        return reduce_rows(basis);
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square matrix");
        Matrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = Rational(1);
        }
        auto pivots = aug.rref();
        if (pivots.size() != rows_ || pivots.back() >= cols_)
            throw std::domain_error("Matrix: singular matrix has no inverse");
        Matrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    // Rows stacked into a matrix.
    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    // RREF a set of row vectors, dropping zero rows: the canonical basis of
    // their span (leading coefficient 1, ascending leading index).
    static std::vector<std::vector<Rational>> reduce_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return {};
        Matrix m = from_rows(rows);
        auto pivots = m.rref();
        std::vector<std::vector<Rational>> out;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::vector<Rational> v(m.cols_);
            for (std::size_t j = 0; j < m.cols_; ++j) v[j] = m(r, j);
            out.push_back(std::move(v));
        }
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += (*this)(i, j).to_string();
            }
            s += "]\n";
        }
        return s;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// True iff v lies in the row span of the given vectors (exact rank test).
inline bool in_row_span(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& v) {
    bool v_zero = true;
    for (const auto& x : v)
        if (!x.is_zero()) {
            v_zero = false;
            break;
        }
    if (v_zero) return true;
    if (rows.empty()) return false;
    Matrix a = Matrix::from_rows(rows);
    auto stacked = rows;
    stacked.push_back(v);
    Matrix b = Matrix::from_rows(stacked);
    return a.rank() == b.rank();
}

} // namespace loopcas
