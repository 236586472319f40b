#pragma once

// Dense real64 matrix, row-major. Value type: copy/move freely, safe to
// send between threads. All operations are pure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mango/dense.hpp"
#include "mango/errors.hpp"

namespace mango {

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw DimensionError("Matrix: entry count " +
                                 std::to_string(entries_.size()) +
                                 " != rows*cols");
        check_finite();
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix random_normal(std::size_t rows, std::size_t cols,
                                double stddev, std::mt19937_64& gen) {
        Matrix m(rows, cols);
        std::normal_distribution<double> d(0.0, stddev);
        for (auto& e : m.entries_) e = d(gen);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    const std::vector<double>& entries() const { return entries_; }
    std::vector<double>& entries() { return entries_; }
    const double* data() const { return entries_.data(); }
    double* data() { return entries_.data(); }

    void check_finite() const {
        for (double e : entries_)
            if (!std::isfinite(e))
                throw DomainError("Matrix: non-finite entry");
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionError("Matrix multiply: inner dims " +
                                 std::to_string(cols_) + " vs " +
                                 std::to_string(o.rows_));
        Matrix c(rows_, o.cols_);
        dense::gemm_nn(rows_, o.cols_, cols_, data(), o.data(), c.data());
        return c;
    }

    std::vector<double> operator*(const std::vector<double>& x) const {
        if (cols_ != x.size())
            throw DimensionError("Matrix·vector: dim mismatch");
        std::vector<double> y(rows_);
        dense::gemv(rows_, cols_, data(), x.data(), y.data());
        return y;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            entries_[i] += o.entries_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            entries_[i] -= o.entries_[i];
        return *this;
    }
    Matrix& operator*=(double s) {
        for (auto& e : entries_) e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("Matrix: shape mismatch " +
                                 std::to_string(rows_) + "x" +
                                 std::to_string(cols_) + " vs " +
                                 std::to_string(o.rows_) + "x" +
                                 std::to_string(o.cols_));
    }

    double norm1() const {
        // max column sum
        double best = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows_; ++r)
                s += std::abs((*this)(r, c));
            if (s > best) best = s;
        }
        return best;
    }

    double max_abs_diff(const Matrix& o) const {
        require_same_shape(o);
        double best = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            best = std::max(best, std::abs(entries_[i] - o.entries_[i]));
        return best;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

inline double frobenius_norm_sq(const Matrix& m) {
    double s = 0.0;
    for (double e : m.entries()) s += e * e;
    return s;
}

inline double frobenius_norm(const Matrix& m) {
    return std::sqrt(frobenius_norm_sq(m));
}

inline double trace_inner_product(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        s += a.entries()[i] * b.entries()[i];
    return s;  // trace(bᵀa)
}

// Solves A·X = B in place via LU with partial pivoting. A is n×n, B is n×k.
inline Matrix lu_solve(Matrix a, Matrix b) {
    if (!a.square()) throw DimensionError("lu_solve: A not square");
    if (a.rows() != b.rows()) throw DimensionError("lu_solve: A/B rows");
    const std::size_t n = a.rows(), k = b.cols();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) throw DomainError("lu_solve: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
            for (std::size_t c = 0; c < k; ++c) std::swap(b(col, c), b(piv, c));
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) * inv;
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < k; ++c) b(r, c) -= f * b(col, c);
        }
    }
    // back substitution
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t c = 0; c < k; ++c) {
            double acc = b(ri, c);
            for (std::size_t j = ri + 1; j < n; ++j) acc -= a(ri, j) * b(j, c);
            b(ri, c) = acc / a(ri, ri);
        }
    }
    return b;
}

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns eigenvalues in descending order with matching unit eigenvectors
// as rows of the second member.
inline std::pair<std::vector<double>, Matrix> symmetric_eigh(Matrix a) {
    if (!a.square()) throw DimensionError("symmetric_eigh: not square");
    const std::size_t n = a.rows();
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                    const double vpi = v(p, i), vqi = v(q, i);
                    v(p, i) = c * vpi - s * vqi;
                    v(q, i) = s * vpi + c * vqi;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
    std::vector<double> evals(n);
    Matrix evecs(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        evals[i] = diag[order[i]];
        for (std::size_t j = 0; j < n; ++j) evecs(i, j) = v(order[i], j);
    }
    return {evals, evecs};
}

}  // namespace mango
