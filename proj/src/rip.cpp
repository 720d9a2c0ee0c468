#include "pursuitlab/rip.hpp"

#include <algorithm>
#include <cmath>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/kernels.hpp"
#include "pursuitlab/matcore.hpp"
#include "pursuitlab/parallel.hpp"
#include "pursuitlab/tolerances.hpp"

namespace pursuitlab {

namespace detail {

std::uint64_t binomial_checked(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * std::uint64_t(n - k + i) / std::uint64_t(i);
        if (c > tol::kMaxSubsets)
            throw TooLarge("subset enumeration past the guard");
    }
    return c;
}

std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
    std::vector<int> c;
    c.reserve(std::size_t(k));
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (int v = next;; ++v) {
            std::uint64_t block = binomial_checked(n - 1 - v, k - 1 - slot);
            if (rank < block) {
                c.push_back(v);
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return c;
}

bool next_combination(std::vector<int>& c, int n) {
    int k = int(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[std::size_t(i)] < n - k + i) {
            ++c[std::size_t(i)];
            for (int j = i + 1; j < k; ++j) c[std::size_t(j)] = c[std::size_t(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

}

namespace {

struct SubsetBest {
    double delta = -1.0;
    std::vector<int> subset;
    double eigenvalue = 0.0;
    RipCertificate::Side side = RipCertificate::Side::Upper;
    bool valid = false;
};

// Diagonalize the K x K block in place and return (lambda_min, lambda_max).
std::pair<double, double> eigen_extremes(double* block, int K) {
    detail::jacobi_inplace(block, K, nullptr);
    double lmin = block[0], lmax = block[0];
    for (int i = 1; i < K; ++i) {
        double v = block[std::size_t(i) * K + i];
        lmin = std::min(lmin, v);
        lmax = std::max(lmax, v);
    }
    return {lmin, lmax};
}

}

RipCertificate exact_delta(const Matrix& A, int K) {
    int n = A.cols();
    if (K < 1 || K > n) throw DimensionMismatch("exact_delta: order out of range");
    std::uint64_t total = detail::binomial_checked(n, K);

    Matrix G = gram(A);

    std::size_t chunks = chunk_count(std::size_t(total));
    std::vector<SubsetBest> best(chunks);

    parallel_chunks(std::size_t(total), [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        std::vector<int> subset = detail::unrank_combination(lo, n, K);
        std::vector<double> block(std::size_t(K) * K);
        SubsetBest& b = best[chunk];
        for (std::size_t r = lo; r < hi; ++r) {
            for (int j = 0; j < K; ++j)
                for (int i = 0; i < K; ++i)
                    block[std::size_t(j) * K + i] = G(subset[std::size_t(i)], subset[std::size_t(j)]);
            auto [lmin, lmax] = eigen_extremes(block.data(), K);
            double up = lmax - 1.0, low = 1.0 - lmin;
            double d = std::max(up, low);
            if (!b.valid || d > b.delta) {
                b.valid = true;
                b.delta = d;
                b.subset = subset;
                if (up >= low) {
                    b.side = RipCertificate::Side::Upper;
                    b.eigenvalue = lmax;
                } else {
                    b.side = RipCertificate::Side::Lower;
                    b.eigenvalue = lmin;
                }
            }
            detail::next_combination(subset, n);
        }
    });

    // Merge in chunk order: strict > keeps the lexicographically smallest
    // achiever since chunks cover ranks in increasing lexicographic order.
    SubsetBest overall;
    for (const auto& b : best) {
        if (!b.valid) continue;
        if (!overall.valid || b.delta > overall.delta) overall = b;
    }

    RipCertificate cert;
    cert.order = K;
    cert.delta = overall.delta;
    cert.extremal_subset = overall.subset;
    cert.extremal_eigenvalue = overall.eigenvalue;
    cert.side = overall.side;
    cert.satisfies_rip = overall.delta < 1.0;
    return cert;
}

bool delta_monotone_check(const Matrix& A, int K1, int K2) {
    if (K1 > K2) throw InvalidArgument("delta_monotone_check: K1 > K2");
    double d1 = exact_delta(A, K1).delta;
    double d2 = exact_delta(A, K2).delta;
    return d1 <= d2 + 1e-12;
}

BoundTable bound_table(int K) {
    if (K < 1) throw InvalidArgument("bound_table: K must be >= 1");
    BoundTable t;
    t.K = K;
    double k = double(K);
    t.sufficient_new = 1.0 / std::sqrt(k + 1.0);
    t.necessary_new = 1.0 / std::sqrt(k + 0.25);
    t.sufficient_prior = 1.0 / (std::sqrt(k) + 2.0);
    t.necessary_prior = 1.0 / std::sqrt(k);
    t.general_matrix = 1.0 / (2.0 * std::sqrt(k + 1.0) + 1.0);
    return t;
}

std::pair<double, double> projection_lower_bound(const Matrix& A, const std::vector<int>& S, int i) {
    int m = A.rows();
    int n = A.cols();
    if (i < 0 || i >= n) throw DimensionMismatch("projection_lower_bound: index out of range");
    for (int s : S) {
        if (s < 0 || s >= n) throw DimensionMismatch("projection_lower_bound: subset out of range");
        if (s == i) throw IndexInSet("projection_lower_bound: index inside the subset");
    }
    for (int j = 0; j < n; ++j) {
        double cn = std::sqrt(kern::nrm2sq(A.col(j), std::size_t(m)));
        if (std::fabs(cn - 1.0) > tol::kUnitCol)
            throw NotUnitColumns("projection_lower_bound: columns must be unit norm");
    }

    std::vector<int> sorted_S = S;
    std::sort(sorted_S.begin(), sorted_S.end());
    Matrix AS = A.columns(sorted_S);
    Vector ai(A.col(i), A.col(i) + m);
    double observed = sorted_S.empty()
                          ? norm(ai)
                          : std::sqrt(HouseholderQr(AS).complement_norm_sq(ai));

    double delta = exact_delta(A, int(S.size()) + 1).delta;
    double bound = delta < 1.0 ? std::sqrt(1.0 - delta * delta) : 0.0;
    return {observed, bound};
}

NormalizedColumns normalize_columns(const Matrix& A_hat) {
    int m = A_hat.rows();
    int n = A_hat.cols();
    NormalizedColumns out;
    out.A = A_hat;
    out.scales.resize(std::size_t(n));
    for (int j = 0; j < n; ++j) {
        double cn = std::sqrt(kern::nrm2sq(out.A.col(j), std::size_t(m)));
        if (cn <= tol::kZeroCol) throw ZeroColumn("normalize_columns: zero column");
        out.scales[std::size_t(j)] = 1.0 / cn;
        kern::scal(1.0 / cn, out.A.col(j), std::size_t(m));
    }
    return out;
}

TransferBound transfer_bound(double delta_hat, const std::vector<double>& scales) {
    if (!(delta_hat >= 0.0) || delta_hat >= 1.0)
        throw InvalidArgument("transfer_bound: delta_hat outside [0, 1)");
    if (scales.empty()) throw InvalidArgument("transfer_bound: no scales");
    double dmin = scales[0], dmax = scales[0];
    for (double d : scales) {
        if (!(d > 0.0)) throw InvalidArgument("transfer_bound: scales must be positive");
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    TransferBound out;
    out.gamma = std::max((1.0 + delta_hat) * dmax * dmax - 1.0,
                         1.0 - (1.0 - delta_hat) * dmin * dmin);
    out.gamma_unsquared = std::max((1.0 + delta_hat) * dmax - 1.0,
                                   1.0 - (1.0 - delta_hat) * dmin);
    out.corollary_bound = 2.0 * delta_hat / (1.0 - delta_hat);
    return out;
}

}
