#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/kernels.hpp"

namespace pursuitlab {

using Vector = std::vector<double>;

// Dense column-major matrix. Columns are contiguous, which is what every
// algorithm here wants (they all walk columns).
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0.0) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("matrix dimensions must be nonnegative");
    }

    // Row-major brace initialization for hand-written instances.
    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = int(init.size());
        cols_ = rows_ > 0 ? int(init.begin()->size()) : 0;
        data_.assign(std::size_t(rows_) * cols_, 0.0);
        int i = 0;
        for (const auto& row : init) {
            if (int(row.size()) != cols_) throw DimensionMismatch("ragged initializer");
            int j = 0;
            for (double v : row) (*this)(i, j++) = v;
            ++i;
        }
        check_finite();
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[std::size_t(j) * rows_ + i]; }
    double operator()(int i, int j) const { return data_[std::size_t(j) * rows_ + i]; }

    double* col(int j) { return data_.data() + std::size_t(j) * rows_; }
    const double* col(int j) const { return data_.data() + std::size_t(j) * rows_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    // Columns `which` of this matrix, in the given order.
    Matrix columns(const std::vector<int>& which) const {
        Matrix out(rows_, int(which.size()));
        for (std::size_t j = 0; j < which.size(); ++j) {
            if (which[j] < 0 || which[j] >= cols_) throw DimensionMismatch("column index out of range");
            const double* src = col(which[j]);
            double* dst = out.col(int(j));
            for (int i = 0; i < rows_; ++i) dst[i] = src[i];
        }
        return out;
    }

    void check_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) throw InvalidArgument("matrix entry not finite");
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
    return kern::dot(x.data(), y.data(), x.size());
}

inline double norm_sq(const Vector& x) { return kern::nrm2sq(x.data(), x.size()); }

inline double norm(const Vector& x) { return std::sqrt(norm_sq(x)); }

// y = A * x
inline Vector matvec(const Matrix& A, const Vector& x) {
    if (int(x.size()) != A.cols()) throw DimensionMismatch("matvec: shape mismatch");
    Vector y(std::size_t(A.rows()), 0.0);
    for (int j = 0; j < A.cols(); ++j)
        kern::axpy(x[std::size_t(j)], A.col(j), y.data(), std::size_t(A.rows()));
    return y;
}

// out = A' * x  (one dot per column; the column-major layout makes each contiguous)
inline Vector matvec_t(const Matrix& A, const Vector& x) {
    if (int(x.size()) != A.rows()) throw DimensionMismatch("matvec_t: shape mismatch");
    Vector out(std::size_t(A.cols()));
    for (int j = 0; j < A.cols(); ++j)
        out[std::size_t(j)] = kern::dot(A.col(j), x.data(), std::size_t(A.rows()));
    return out;
}

// A' * A, formed once and mirrored.
inline Matrix gram(const Matrix& A) {
    Matrix g(A.cols(), A.cols());
    for (int i = 0; i < A.cols(); ++i)
        for (int j = i; j < A.cols(); ++j) {
            double v = kern::dot(A.col(i), A.col(j), std::size_t(A.rows()));
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

}
