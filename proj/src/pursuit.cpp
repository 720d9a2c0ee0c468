#include "pursuitlab/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/kernels.hpp"
#include "pursuitlab/matcore.hpp"
#include "pursuitlab/tolerances.hpp"

namespace pursuitlab {

namespace {

// Scores for all columns given the residual and the QR of the selected set.
// Degenerate candidates (projected norm under the floor) score 0 here; the
// public selection_scores op turns them into an error instead.
std::vector<double> score_all(const Matrix& A, const std::vector<int>& T,
                              const HouseholderQr* qr, const Vector& r,
                              ScoreRule rule, bool throw_on_degenerate) {
    int n = A.cols();
    int m = A.rows();
    std::vector<char> in_T(std::size_t(n), 0);
    for (int t : T) in_T[std::size_t(t)] = 1;

    std::vector<double> scores(std::size_t(n), 0.0);
    Vector column(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        if (in_T[std::size_t(i)]) continue;
        double corr = std::fabs(kern::dot(A.col(i), r.data(), std::size_t(m)));
        if (rule == ScoreRule::Omp) {
            scores[std::size_t(i)] = corr;
            continue;
        }
        double pnorm;
        if (qr == nullptr) {
            pnorm = std::sqrt(kern::nrm2sq(A.col(i), std::size_t(m)));
        } else {
            column.assign(A.col(i), A.col(i) + m);
            pnorm = std::sqrt(qr->complement_norm_sq(column));
        }
        if (pnorm <= tol::kDegenerateCol) {
            if (throw_on_degenerate)
                throw DegenerateColumn("candidate column lies in span of selected set");
            scores[std::size_t(i)] = 0.0;
        } else {
            scores[std::size_t(i)] = corr / pnorm;
        }
    }
    return scores;
}

// Argmax over unselected indices with the relative tie band; ties and the
// all-zero case both resolve to the smallest eligible index.
int pick_index(const std::vector<double>& scores, const std::vector<char>& excluded) {
    double best = -1.0;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (!excluded[i] && scores[i] > best) best = scores[i];
    double cut = best - tol::kTieRel * best;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (!excluded[i] && scores[i] >= cut) return int(i);
    return -1;  // unreachable: some index is always eligible
}

PursuitTrace run_greedy(const Matrix& A, const Vector& y, int K, int L, Algorithm alg) {
    int m = A.rows();
    int n = A.cols();
    if (int(y.size()) != m) throw DimensionMismatch("pursuit: y length");
    if (K < 1 || K > std::min(m, n)) throw DimensionMismatch("pursuit: K out of range");

    ScoreRule rule = alg == Algorithm::Omp ? ScoreRule::Omp : ScoreRule::Ols;

    PursuitTrace trace;
    trace.algorithm = alg;

    std::vector<int> T;
    Vector r = y;
    Vector coeffs;
    double rnorm = norm(r);

    while (int(T.size()) < K) {
        if (rnorm <= tol::kResidualStop) {
            trace.early_stop = true;
            break;
        }
        if (alg == Algorithm::Mols && int(T.size()) + L > m) break;

        std::vector<int> sorted_T = T;
        std::sort(sorted_T.begin(), sorted_T.end());
        Matrix AT = A.columns(sorted_T);
        std::unique_ptr<HouseholderQr> qr;
        if (!sorted_T.empty()) qr = std::make_unique<HouseholderQr>(AT);

        std::vector<double> scores =
            score_all(A, sorted_T, qr.get(), r, rule, /*throw_on_degenerate=*/false);

        std::vector<char> excluded(std::size_t(n), 0);
        for (int t : T) excluded[std::size_t(t)] = 1;

        IterationRecord rec;
        rec.scores = scores;
        int picks = alg == Algorithm::Mols ? L : 1;
        for (int c = 0; c < picks; ++c) {
            int idx = pick_index(scores, excluded);
            if (idx < 0) break;  // candidates exhausted in a final MOLS round
            excluded[std::size_t(idx)] = 1;
            rec.selected.push_back(idx);
            T.push_back(idx);
        }

        rec.support_after = T;
        std::sort(rec.support_after.begin(), rec.support_after.end());

        Matrix Asel = A.columns(rec.support_after);
        HouseholderQr refit(Asel);
        coeffs = refit.solve(y);
        r = y;
        for (std::size_t j = 0; j < rec.support_after.size(); ++j)
            kern::axpy(-coeffs[j], A.col(rec.support_after[j]), r.data(), std::size_t(m));
        rnorm = norm(r);
        rec.residual_norm_after = rnorm;
        trace.iterations.push_back(std::move(rec));
    }

    trace.final_support = T;
    std::sort(trace.final_support.begin(), trace.final_support.end());
    trace.final_estimate.assign(std::size_t(n), 0.0);
    if (!trace.iterations.empty()) {
        const auto& last = trace.iterations.back().support_after;
        for (std::size_t j = 0; j < last.size(); ++j)
            trace.final_estimate[std::size_t(last[j])] = coeffs[j];
    }
    trace.final_residual_norm = rnorm;
    if (int(T.size()) < K && rnorm <= tol::kResidualStop) trace.early_stop = true;
    return trace;
}

}

PursuitTrace run_ols(const Matrix& A, const Vector& y, int K) {
    return run_greedy(A, y, K, 1, Algorithm::Ols);
}

PursuitTrace run_omp(const Matrix& A, const Vector& y, int K) {
    return run_greedy(A, y, K, 1, Algorithm::Omp);
}

PursuitTrace run_mols(const Matrix& A, const Vector& y, int K, int L) {
    int m = A.rows();
    if (K < 1 || K > std::min(m, A.cols()))
        throw DimensionMismatch("pursuit: K out of range");
    int lmax = std::min(K, m / K);
    if (L < 1 || L > lmax) throw InvalidArgument("mols: L outside [1, min(K, rows/K)]");
    return run_greedy(A, y, K, L, Algorithm::Mols);
}

std::vector<double> selection_scores(const Matrix& A, const std::vector<int>& T,
                                     const Vector& r, ScoreRule rule) {
    if (int(r.size()) != A.rows()) throw DimensionMismatch("selection_scores: r length");
    std::vector<int> sorted_T = T;
    std::sort(sorted_T.begin(), sorted_T.end());
    for (int t : sorted_T)
        if (t < 0 || t >= A.cols()) throw DimensionMismatch("selection_scores: index out of range");

    if (sorted_T.empty())
        return score_all(A, sorted_T, nullptr, r, rule, /*throw_on_degenerate=*/true);

    Matrix AT = A.columns(sorted_T);
    HouseholderQr qr(AT);  // throws RankDeficient if T lost rank
    return score_all(A, sorted_T, &qr, r, rule, /*throw_on_degenerate=*/true);
}

}
