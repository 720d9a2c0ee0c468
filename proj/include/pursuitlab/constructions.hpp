#pragma once

#include <cstdint>
#include <vector>

#include "pursuitlab/matrix.hpp"
#include "pursuitlab/rng.hpp"
#include "pursuitlab/sparse.hpp"

namespace pursuitlab {

// (s+1) x (s+1) matrix whose first s columns are the standard basis and whose
// last column is (rho, 0, ..., 0, sqrt(1-rho^2))'. Unit columns; Gram
// eigenvalues are {1-rho, 1, ..., 1, 1+rho}, so the exact order-(s+1)
// constant is rho, and the projection of the last column onto the complement
// of the first s has norm exactly sqrt(1-rho^2): the projection lower bound
// is tight on this family. Requires 0 < rho < 1 and s >= 1.
Matrix example1_matrix(double rho, int s);

// The hand-built 3-column instance on which the order-3 constant equals
// 1/sqrt(2.25) yet a 2-step greedy run picks index 0 first (all first-round
// scores tie at 2/3) and misses the true support {1, 2}.
struct CounterexampleK2 {
    Matrix A;         // 3 x 3, unit columns
    SparseVector x;   // support {1, 2}, values (-1, 1)
    Vector y;         // A * x
};

CounterexampleK2 counterexample_k2();

// One point of the two-parameter Gram family: G = [[1,a,b],[a,1,c],[b,c,1]]
// with c = 1 - a + b, factored as A = chol(G), probed with x supported on
// {1, 2} with values (-1, 1). By construction all three first-round
// correlations are equal, so the first pick falls on index 0 (0-based) and
// recovery fails. Requires -1 < b <= a < 1; throws NotPositiveDefinite where
// the Gram is not one.
struct GramFamilyPoint {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    Matrix A;
    double delta3 = 0.0;    // exact order-3 constant of A
    int ols_first_pick = 0; // 0-based
    bool fails = false;     // first pick == 0
};

GramFamilyPoint gram_family_point(double a, double b);

// Scan the family on the grid a, b in {-1 + i*step : i >= 1, value < 1},
// b <= a, skipping non-positive-definite points, minimizing delta3 over the
// failing points. Ties resolve to the lexicographically smallest (a, b).
// Requires 0 < step <= 0.05.
struct GramScanResult {
    double step = 0.0;
    std::uint64_t points_total = 0;    // grid points with b <= a
    std::uint64_t points_valid = 0;    // positive definite
    std::uint64_t points_failing = 0;  // valid and recovery fails
    double min_delta3 = 0.0;
    double argmin_a = 0.0;
    double argmin_b = 0.0;
};

GramScanResult scan_gram_family(double step);

enum class EnsembleKind { GaussianNormalized, UniformNormalized };

// Random matrix with iid entries (standard normal, or uniform on [-1, 1]),
// columns rescaled to unit norm. Deterministic for a given seed. m <= n.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GaussianNormalized;
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
};

Matrix sample_ensemble(const EnsembleSpec& spec);

// Same sampling, driven by an already-positioned generator (used by batch
// modes, where trial i hands in stream i).
Matrix sample_ensemble_with(Rng& rng, EnsembleKind kind, int m, int n);

// K-sparse signal with uniform random support and values of magnitude in
// [0.5, 2] with random sign (bounded away from zero on purpose).
SparseVector sample_sparse_signal(Rng& rng, int n, int K);

}
