#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pursuitlab/matrix.hpp"

namespace pursuitlab {

// Exact restricted-isometry certificate at one order: the worst size-K column
// subset, found by enumerating every subset and taking eigenvalue extremes of
// its Gram block.
struct RipCertificate {
    int order = 0;
    double delta = 0.0;
    std::vector<int> extremal_subset;  // sorted; lexicographically smallest achiever
    double extremal_eigenvalue = 0.0;  // the Gram eigenvalue realizing delta
    enum class Side { Upper, Lower } side = Side::Upper;
    bool satisfies_rip = false;  // delta < 1
};

// Enumerates all C(n, K) subsets in lexicographic order (refuses beyond the
// subset guard). Ties on delta resolve to the lexicographically smallest
// subset; equal upper and lower deviations within a subset report Upper.
// Partitioned across workers with a deterministic merge.
RipCertificate exact_delta(const Matrix& A, int K);

// delta(K1) <= delta(K2) + 1e-12 for K1 <= K2.
bool delta_monotone_check(const Matrix& A, int K1, int K2);

// The five threshold curves compared by the `bounds` mode, per sparsity K.
struct BoundTable {
    int K = 0;
    double sufficient_new = 0.0;     // 1 / sqrt(K+1)
    double necessary_new = 0.0;      // 1 / sqrt(K + 1/4)
    double sufficient_prior = 0.0;   // 1 / (sqrt(K) + 2)
    double necessary_prior = 0.0;    // 1 / sqrt(K)
    double general_matrix = 0.0;     // 1 / (2*sqrt(K+1) + 1), non-unit columns
};

BoundTable bound_table(int K);

// Observed ||P_comp_S A_i|| against its certified floor sqrt(1 - delta^2)
// (0 when delta >= 1), where delta is the exact order-(|S|+1) constant.
// Requires unit columns and i outside S. Returns (observed, bound).
std::pair<double, double> projection_lower_bound(const Matrix& A, const std::vector<int>& S, int i);

// A_hat with columns rescaled to unit norm, plus the scale factors d_i
// (A = A_hat * diag(d)). Columns with norm at or below the zero floor throw.
struct NormalizedColumns {
    Matrix A;
    std::vector<double> scales;
};

NormalizedColumns normalize_columns(const Matrix& A_hat);

// RIP transfer from a non-normalized matrix with constant delta_hat to its
// column-normalized version: gamma bounds the normalized constant, and
// corollary_bound = 2*delta_hat / (1 - delta_hat) bounds gamma whenever the
// scales are consistent with delta_hat. gamma uses the squared scales; the
// un-squared variant is carried along for inspection only.
struct TransferBound {
    double gamma = 0.0;
    double corollary_bound = 0.0;
    double gamma_unsquared = 0.0;
};

TransferBound transfer_bound(double delta_hat, const std::vector<double>& scales);

namespace detail {

std::uint64_t binomial_checked(int n, int k);  // throws TooLarge past the guard

// Lexicographic rank -> combination (size k out of n).
std::vector<int> unrank_combination(std::uint64_t rank, int n, int k);

// Advance to the next combination in lexicographic order; false at the last.
bool next_combination(std::vector<int>& c, int n);

}

}
