#include "pursuitlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/kernels.hpp"
#include "pursuitlab/tolerances.hpp"

namespace pursuitlab {

HouseholderQr::HouseholderQr(const Matrix& A)
    : m_(A.rows()), p_(A.cols()), r_(A.cols(), A.cols()) {
    if (p_ > m_) throw RankDeficient("more columns than rows");

    Matrix work = A;
    vs_.resize(std::size_t(p_));
    vscale_.assign(std::size_t(p_), 0.0);

    for (int k = 0; k < p_; ++k) {
        double* colk = work.col(k);
        int len = m_ - k;
        double xnorm = std::sqrt(kern::nrm2sq(colk + k, std::size_t(len)));
        double x0 = colk[k];
        double alpha = x0 >= 0.0 ? -xnorm : xnorm;  // R_kk; sign avoids cancellation

        auto& v = vs_[std::size_t(k)];
        v.assign(colk + k, colk + m_);
        v[0] = x0 - alpha;
        double vnsq = kern::nrm2sq(v.data(), v.size());
        vscale_[std::size_t(k)] = vnsq > 0.0 ? 2.0 / vnsq : 0.0;

        r_(k, k) = alpha;
        // Reflect the remaining columns and record the new row of R.
        for (int j = k + 1; j < p_; ++j) {
            double* colj = work.col(j);
            double s = kern::dot(v.data(), colj + k, v.size()) * vscale_[std::size_t(k)];
            kern::axpy(-s, v.data(), colj + k, v.size());
            r_(k, j) = colj[k];
        }
    }

    double dmax = 0.0, dmin = 0.0;
    for (int k = 0; k < p_; ++k) {
        double d = std::fabs(r_(k, k));
        if (k == 0) dmin = d;
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    if (p_ > 0 && dmin < tol::kRankRel * dmax)
        throw RankDeficient("column set numerically rank deficient");
    if (p_ > 0 && dmax == 0.0) throw RankDeficient("all columns zero");
}

void HouseholderQr::apply_qt(Vector& w) const {
    for (int k = 0; k < p_; ++k) {
        const auto& v = vs_[std::size_t(k)];
        double s = kern::dot(v.data(), w.data() + k, v.size()) * vscale_[std::size_t(k)];
        kern::axpy(-s, v.data(), w.data() + k, v.size());
    }
}

void HouseholderQr::apply_q(Vector& w) const {
    for (int k = p_ - 1; k >= 0; --k) {
        const auto& v = vs_[std::size_t(k)];
        double s = kern::dot(v.data(), w.data() + k, v.size()) * vscale_[std::size_t(k)];
        kern::axpy(-s, v.data(), w.data() + k, v.size());
    }
}

Vector HouseholderQr::solve(const Vector& y) const {
    if (int(y.size()) != m_) throw DimensionMismatch("least squares: rhs length");
    Vector w = y;
    apply_qt(w);
    Vector c(static_cast<std::size_t>(p_));
    for (int i = p_ - 1; i >= 0; --i) {
        double s = w[std::size_t(i)];
        for (int j = i + 1; j < p_; ++j) s -= r_(i, j) * c[std::size_t(j)];
        c[std::size_t(i)] = s / r_(i, i);
    }
    return c;
}

double HouseholderQr::complement_norm_sq(const Vector& v) const {
    if (int(v.size()) != m_) throw DimensionMismatch("projection: vector length");
    Vector w = v;
    apply_qt(w);
    return kern::nrm2sq(w.data() + p_, std::size_t(m_ - p_));
}

Vector HouseholderQr::complement(const Vector& v) const {
    if (int(v.size()) != m_) throw DimensionMismatch("projection: vector length");
    Vector w = v;
    apply_qt(w);
    std::fill(w.begin(), w.begin() + p_, 0.0);
    apply_q(w);
    return w;
}

Vector least_squares(const Matrix& A, const Vector& y) {
    return HouseholderQr(A).solve(y);
}

Vector project_complement(const Matrix& A, const Vector& v) {
    if (A.cols() == 0) {
        if (int(v.size()) != A.rows() && A.rows() != 0)
            throw DimensionMismatch("projection: vector length");
        return v;
    }
    return HouseholderQr(A).complement(v);
}

namespace {

double max_abs(const Matrix& M) {
    double m = 0.0;
    for (int j = 0; j < M.cols(); ++j)
        for (int i = 0; i < M.rows(); ++i) m = std::max(m, std::fabs(M(i, j)));
    return m;
}

void require_symmetric(const Matrix& M, const char* who) {
    if (M.rows() != M.cols()) throw DimensionMismatch(std::string(who) + ": matrix not square");
    double scale = max_abs(M);
    for (int j = 0; j < M.cols(); ++j)
        for (int i = j + 1; i < M.rows(); ++i)
            if (std::fabs(M(i, j) - M(j, i)) > tol::kSymRel * scale)
                throw NotSymmetric(std::string(who) + ": matrix not symmetric");
}

}

namespace detail {

void jacobi_inplace(double* M, int n, double* V) {
    auto at = [&](int i, int j) -> double& { return M[std::size_t(j) * n + i]; };
    if (V != nullptr) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) V[std::size_t(j) * n + i] = (i == j) ? 1.0 : 0.0;
    }
    if (n <= 1) return;

    double frob = std::sqrt(kern::nrm2sq(M, std::size_t(n) * n));
    double thresh = tol::kJacobiOffRel * frob;

    for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = j + 1; i < n; ++i) off = std::max(off, std::fabs(at(i, j)));
        if (off <= thresh) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int i = 0; i < n; ++i) {
                    double mip = at(i, p), miq = at(i, q);
                    at(i, p) = c * mip - s * miq;
                    at(i, q) = s * mip + c * miq;
                }
                for (int i = 0; i < n; ++i) {
                    double mpi = at(p, i), mqi = at(q, i);
                    at(p, i) = c * mpi - s * mqi;
                    at(q, i) = s * mpi + c * mqi;
                }
                if (V != nullptr) {
                    for (int i = 0; i < n; ++i) {
                        double vip = V[std::size_t(p) * n + i], viq = V[std::size_t(q) * n + i];
                        V[std::size_t(p) * n + i] = c * vip - s * viq;
                        V[std::size_t(q) * n + i] = s * vip + c * viq;
                    }
                }
            }
        }
    }
}

}

EigenDecomposition sym_eigen(const Matrix& M) {
    require_symmetric(M, "sym_eigen");
    int n = M.rows();

    Matrix work = M;
    Matrix vecs(n, n);
    detail::jacobi_inplace(work.data(), n, vecs.data());

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return work(a, a) < work(b, b); });

    EigenDecomposition out;
    out.values.resize(std::size_t(n));
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[std::size_t(j)] = work(order[std::size_t(j)], order[std::size_t(j)]);
        const double* src = vecs.col(order[std::size_t(j)]);
        double* dst = out.vectors.col(j);
        for (int i = 0; i < n; ++i) dst[i] = src[i];
    }
    return out;
}

Matrix cholesky_upper(const Matrix& M) {
    require_symmetric(M, "cholesky");
    int n = M.rows();
    Matrix R(n, n);
    for (int j = 0; j < n; ++j) {
        double pivot = M(j, j);
        for (int k = 0; k < j; ++k) pivot -= R(k, j) * R(k, j);
        if (pivot <= tol::kCholPivot)
            throw NotPositiveDefinite("cholesky: pivot below floor");
        R(j, j) = std::sqrt(pivot);
        for (int l = j + 1; l < n; ++l) {
            double s = M(j, l);
            for (int k = 0; k < j; ++k) s -= R(k, j) * R(k, l);
            R(j, l) = s / R(j, j);
        }
    }
    return R;
}

}
