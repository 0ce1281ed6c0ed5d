#pragma once

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k2km/bigint.hpp"

namespace k2km {

/// Dense matrix of arbitrary-precision integers. Rectangular; a relation
/// matrix with zero rows is allowed.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative dimension");
    }

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<std::size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("IntMatrix: ragged rows");
            for (long long v : r) a_.emplace_back(v);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    BigInt& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const BigInt& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = BigInt(1);
        return m;
    }

    bool square() const { return rows_ == cols_; }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const IntMatrix& x, const IntMatrix& y) { return !(x == y); }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("IntMatrix: size mismatch");
        IntMatrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j)
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }
    /// row i += f * row j
    void add_row(int i, int j, const BigInt& f) {
        for (int k = 0; k < cols_; ++k) at(i, k) += f * at(j, k);
    }
    /// col i += f * col j
    void add_col(int i, int j, const BigInt& f) {
        for (int k = 0; k < rows_; ++k) at(k, i) += f * at(k, j);
    }
    void negate_row(int i) {
        for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigInt> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant: matrix not square");
    const int n = m.rows();
    if (n == 0) return BigInt(1);
    IntMatrix w = m;
    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return BigInt(0);
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                auto [q, r] = BigInt::divmod(num, prev);
                // Bareiss guarantees exactness
                if (!r.is_zero()) throw std::logic_error("determinant: inexact division");
                w.at(i, j) = q;
            }
            w.at(i, k) = BigInt(0);
        }
        prev = w.at(k, k);
    }
    BigInt det = w.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

}  // namespace k2km
