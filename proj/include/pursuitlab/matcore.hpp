#pragma once

#include <vector>

#include "pursuitlab/matrix.hpp"

namespace pursuitlab {

// Householder QR of an m x p matrix (m >= p required for full column rank).
// Factor once, then solve least squares, apply Q'/Q, or read off projections
// onto the orthogonal complement of the column span. Rank is checked at
// factorization: min |R_jj| < tol::kRankRel * max |R_jj| throws RankDeficient.
class HouseholderQr {
public:
    explicit HouseholderQr(const Matrix& A);

    int rows() const { return m_; }
    int cols() const { return p_; }

    // The p x p upper-triangular factor.
    const Matrix& r() const { return r_; }

    // Minimizer of ||A c - y||_2 (unique by the rank check).
    Vector solve(const Vector& y) const;

    void apply_qt(Vector& w) const;  // w <- Q' w
    void apply_q(Vector& w) const;   // w <- Q w

    // || component of v orthogonal to span(A) ||^2, read from the tail of Q'v.
    double complement_norm_sq(const Vector& v) const;

    // v minus its orthogonal projection onto span(A).
    Vector complement(const Vector& v) const;

private:
    int m_ = 0;
    int p_ = 0;
    std::vector<std::vector<double>> vs_;  // Householder vectors, vs_[k] has length m-k
    std::vector<double> vscale_;           // 2 / ||v_k||^2
    Matrix r_;                             // p x p upper triangle
};

// One-shot least squares: coefficients c minimizing ||A c - y||_2.
Vector least_squares(const Matrix& A, const Vector& y);

// v minus its orthogonal projection onto the column span of A. With zero
// columns, the projector is zero and v comes back unchanged.
Vector project_complement(const Matrix& A, const Vector& v);

// Eigen decomposition of a symmetric matrix (cyclic Jacobi).
struct EigenDecomposition {
    Vector values;   // ascending
    Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values[i]
};

EigenDecomposition sym_eigen(const Matrix& M);

// Upper-triangular R with R'R = M and positive diagonal.
Matrix cholesky_upper(const Matrix& M);

namespace detail {

// In-place cyclic Jacobi on an n x n symmetric matrix stored column-major in
// `M` (n*n doubles). On return the diagonal holds the eigenvalues, unsorted.
// If V is non-null (n*n), it accumulates the rotations (columns = vectors).
void jacobi_inplace(double* M, int n, double* V);

}

}
