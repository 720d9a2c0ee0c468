#pragma once

#include <cstddef>

// Every numeric tolerance used by the library lives here, so the tests and
// the implementation can never drift apart on what "equal enough" means.
namespace pursuitlab::tol {

// QR: a diagonal of R below kRankRel times the largest diagonal is a rank drop.
inline constexpr double kRankRel = 1e-12;

// Symmetry check for eigen/Cholesky inputs, relative to the largest entry.
inline constexpr double kSymRel = 1e-12;

// Cholesky pivot floor (the value under the square root). The matrices in
// scope are unit-diagonal Grams, so an absolute floor is also a relative one.
inline constexpr double kCholPivot = 1e-12;

// Jacobi eigensolver: stop when the largest off-diagonal magnitude falls
// below kJacobiOffRel times the Frobenius norm of the input.
inline constexpr double kJacobiOffRel = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// Greedy selection: scores within this relative band of the max are a tie,
// resolved toward the smallest index.
inline constexpr double kTieRel = 1e-12;

// Residual norm at or below this ends a pursuit run early.
inline constexpr double kResidualStop = 1e-10;

// A candidate column whose projected norm falls below this floor is treated
// as lying in the span of the selected set.
inline constexpr double kDegenerateCol = 1e-12;

// Column norms must sit within this of 1 where unit columns are required.
inline constexpr double kUnitCol = 1e-10;

// Columns with norm at or below this cannot be normalized.
inline constexpr double kZeroCol = 1e-12;

// Residual orthogonality to selected columns (test contract).
inline constexpr double kOrtho = 1e-10;

// Eigen decomposition quality (test contract): V'V vs identity, and
// reconstruction error relative to the largest entry of the input.
inline constexpr double kEigOrtho = 1e-10;
inline constexpr double kEigReconRel = 1e-9;

// Absolute slack for the strict analytic inequalities exercised by the
// lemma-check mode; anything worse than this counts as a violation.
inline constexpr double kLemmaSlack = 1e-12;

// Subset enumeration guard: refuse to enumerate more than this many supports.
inline constexpr std::size_t kMaxSubsets = 1000000;

}
