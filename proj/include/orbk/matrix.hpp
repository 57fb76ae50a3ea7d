#pragma once

#include "orbk/numeric.hpp"

#include <optional>
#include <vector>

namespace orbk {

inline bool elem_is_zero(const Rat& x) { return x.is_zero(); }
inline Rat elem_inv(const Rat& x) { return Rat(1) / x; }

/**
 * Dense matrix over an exact field.  F needs +,-,*, elem_is_zero and
 * elem_inv (found by ADL).  Elimination uses first-nonzero row-major
 * pivoting so every result is deterministic.
 */
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows) * cols, F(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    F& at(int i, int j) { return d_[static_cast<std::size_t>(i) * c_ + j]; }
    const F& at(int i, int j) const { return d_[static_cast<std::size_t>(i) * c_ + j]; }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw validation_error("matrix dimension mismatch in product");
        Mat out(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const F& a = at(i, k);
                if (elem_is_zero(a)) continue;
                for (int j = 0; j < o.c_; ++j) {
                    const F& b = o.at(k, j);
                    if (!elem_is_zero(b)) out.at(i, j) = out.at(i, j) + a * b;
                }
            }
        return out;
    }

    Mat operator+(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw validation_error("matrix dimension mismatch in sum");
        Mat out(r_, c_);
        for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] = d_[i] + o.d_[i];
        return out;
    }

    Mat operator-(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw validation_error("matrix dimension mismatch in difference");
        Mat out(r_, c_);
        for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] = d_[i] - o.d_[i];
        return out;
    }

    Mat scaled(const F& s) const {
        Mat out(r_, c_);
        for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] = d_[i] * s;
        return out;
    }

    Mat transposed() const {
        Mat out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    bool is_zero() const {
        for (const F& x : d_)
            if (!elem_is_zero(x)) return false;
        return true;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int p = -1;
            for (int i = row; i < r_; ++i)
                if (!elem_is_zero(at(i, col))) { p = i; break; }
            if (p < 0) continue;
            if (p != row)
                for (int j = 0; j < c_; ++j) std::swap(at(p, j), at(row, j));
            F inv = elem_inv(at(row, col));
            for (int j = col; j < c_; ++j) at(row, j) = at(row, j) * inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || elem_is_zero(at(i, col))) continue;
                F f = at(i, col);
                for (int j = col; j < c_; ++j) at(i, j) = at(i, j) - f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<F> d_;
};

template <class F>
int rank(Mat<F> m) {
    return static_cast<int>(m.rref().size());
}

/// Basis of { x : A x = 0 } as columns of the returned matrix.
template <class F>
Mat<F> kernel_basis(Mat<F> a) {
    int n = a.cols();
    std::vector<int> pivots = a.rref();
    std::vector<char> is_pivot(n, 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat<F> k(n, static_cast<int>(free_cols.size()));
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        int f = free_cols[fi];
        k.at(f, static_cast<int>(fi)) = F(1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            k.at(pivots[pi], static_cast<int>(fi)) = F(0) - a.at(static_cast<int>(pi), f);
    }
    return k;
}

/// One solution of A x = b, free variables pinned to zero.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& a, const std::vector<F>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw validation_error("solve: rhs length mismatch");
    Mat<F> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<F> x(a.cols(), F(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), a.cols());
    return x;
}

/// Columns of A spanning its image (a deterministic column-space basis).
template <class F>
Mat<F> image_basis(const Mat<F>& a) {
    Mat<F> copy = a;
    std::vector<int> pivots = copy.rref();
    Mat<F> out(a.rows(), static_cast<int>(pivots.size()));
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < a.rows(); ++i) out.at(i, static_cast<int>(k)) = a.at(i, pivots[k]);
    return out;
}

using MatQ = Mat<Rat>;

}  // namespace orbk
