#pragma once

#include <vector>

#include "pursuitlab/matrix.hpp"
#include "pursuitlab/sparse.hpp"

namespace pursuitlab {

enum class Algorithm { Ols, Omp, Mols };

enum class ScoreRule { Ols, Omp };

// One greedy iteration: which indices were taken, the full score vector that
// drove the choice (already-selected indices score 0), and the state after.
struct IterationRecord {
    std::vector<int> selected;       // in selection order; singleton unless MOLS
    std::vector<double> scores;      // length n
    std::vector<int> support_after;  // sorted
    double residual_norm_after = 0.0;
};

struct PursuitTrace {
    Algorithm algorithm = Algorithm::Ols;
    std::vector<IterationRecord> iterations;
    std::vector<int> final_support;  // sorted
    Vector final_estimate;           // length n, least-squares refit on final_support
    double final_residual_norm = 0.0;
    bool early_stop = false;  // residual hit the stop threshold before K picks
};

// Greedy pursuits. Selection maximizes |<A_i, r>| / ||P_comp A_i|| (OLS and
// MOLS) or |<A_i, r>| (OMP) over unselected indices; scores within a 1e-12
// relative band of the max tie toward the smallest index. Candidates whose
// projected norm is below the degeneracy floor score 0 (they cannot reduce
// the residual). Each run stops after K selections, or earlier only when the
// residual norm falls to the stop threshold.
PursuitTrace run_ols(const Matrix& A, const Vector& y, int K);
PursuitTrace run_omp(const Matrix& A, const Vector& y, int K);

// Takes the top L indices per iteration (repeated single-argmax, same tie
// rule) and stops once the support reaches K indices, the residual hits the
// stop threshold, or another round would exceed A.rows columns. Requires
// 1 <= L <= min(K, A.rows / K).
PursuitTrace run_mols(const Matrix& A, const Vector& y, int K, int L);

// Score vector for one hypothetical iteration: entries for indices in T are
// 0; OLS scores divide by the projected column norm and throw
// DegenerateColumn when that norm is below the floor. T must be full rank.
std::vector<double> selection_scores(const Matrix& A, const std::vector<int>& T,
                                     const Vector& r, ScoreRule rule);

}
