#include "pursuitlab/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/kernels.hpp"
#include "pursuitlab/matcore.hpp"
#include "pursuitlab/parallel.hpp"
#include "pursuitlab/pursuit.hpp"
#include "pursuitlab/rip.hpp"
#include "pursuitlab/tolerances.hpp"

namespace pursuitlab {

Matrix example1_matrix(double rho, int s) {
    if (!(rho > 0.0) || !(rho < 1.0)) throw InvalidArgument("example1: rho outside (0, 1)");
    if (s < 1) throw InvalidArgument("example1: s must be >= 1");
    Matrix A(s + 1, s + 1);
    for (int j = 0; j < s; ++j) A(j, j) = 1.0;
    A(0, s) = rho;
    A(s, s) = std::sqrt(1.0 - rho * rho);
    return A;
}

CounterexampleK2 counterexample_k2() {
    double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
    CounterexampleK2 cx;
    cx.A = Matrix{{1.0, 1.0 / 3.0, -1.0 / 3.0},
                  {0.0, 2.0 * r2 / 3.0, r2 / 3.0},
                  {0.0, 0.0, r6 / 3.0}};
    cx.x = SparseVector(3, {1, 2}, {-1.0, 1.0});
    cx.y = matvec(cx.A, cx.x.to_dense());
    return cx;
}

GramFamilyPoint gram_family_point(double a, double b) {
    if (!(b > -1.0) || !(b <= a) || !(a < 1.0))
        throw InvalidArgument("gram family: need -1 < b <= a < 1");

    GramFamilyPoint pt;
    pt.a = a;
    pt.b = b;
    pt.c = 1.0 - a + b;

    Matrix G{{1.0, a, b}, {a, 1.0, pt.c}, {b, pt.c, 1.0}};
    pt.A = cholesky_upper(G);  // throws NotPositiveDefinite off the family

    pt.delta3 = exact_delta(pt.A, 3).delta;

    SparseVector x(3, {1, 2}, {-1.0, 1.0});
    PursuitTrace trace = run_ols(pt.A, matvec(pt.A, x.to_dense()), 2);
    pt.ols_first_pick = trace.iterations.front().selected.front();
    pt.fails = pt.ols_first_pick == 0;
    return pt;
}

GramScanResult scan_gram_family(double step) {
    if (!(step > 0.0) || step > 0.05)
        throw InvalidArgument("gram scan: step outside (0, 0.05]");

    // Grid values -1 + i*step strictly inside (-1, 1), computed from i so the
    // grid is identical however the scan is partitioned.
    std::vector<double> grid;
    for (int i = 1;; ++i) {
        double v = -1.0 + double(i) * step;
        if (v >= 1.0) break;
        grid.push_back(v);
    }
    std::size_t g = grid.size();

    // Flatten the b <= a triangle: point t -> (ia, ib), ib <= ia.
    std::vector<std::size_t> row_start(g + 1, 0);
    for (std::size_t ia = 0; ia < g; ++ia) row_start[ia + 1] = row_start[ia] + ia + 1;
    std::size_t total = row_start[g];

    struct Best {
        bool any = false;
        double delta3 = 0.0;
        double a = 0.0, b = 0.0;
        std::uint64_t valid = 0, failing = 0;
    };
    std::size_t chunks = chunk_count(total);
    std::vector<Best> best(chunks);

    parallel_chunks(total, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        Best& bst = best[chunk];
        std::size_t ia = std::size_t(std::upper_bound(row_start.begin(), row_start.end(), lo) -
                                     row_start.begin()) - 1;
        std::size_t ib = lo - row_start[ia];
        for (std::size_t t = lo; t < hi; ++t) {
            try {
                GramFamilyPoint pt = gram_family_point(grid[ia], grid[ib]);
                ++bst.valid;
                if (pt.fails) {
                    ++bst.failing;
                    if (!bst.any || pt.delta3 < bst.delta3) {
                        bst.any = true;
                        bst.delta3 = pt.delta3;
                        bst.a = pt.a;
                        bst.b = pt.b;
                    }
                }
            } catch (const NotPositiveDefinite&) {
                // off the family; skip
            }
            if (++ib > ia) {
                ++ia;
                ib = 0;
            }
        }
    });

    GramScanResult res;
    res.step = step;
    res.points_total = total;
    for (const auto& bst : best) {
        res.points_valid += bst.valid;
        res.points_failing += bst.failing;
    }
    // Merge in chunk order; strict < keeps the lexicographically smallest
    // (a, b) since chunks walk the grid in (a, b) order.
    bool any = false;
    for (const auto& bst : best) {
        if (!bst.any) continue;
        if (!any || bst.delta3 < res.min_delta3) {
            any = true;
            res.min_delta3 = bst.delta3;
            res.argmin_a = bst.a;
            res.argmin_b = bst.b;
        }
    }
    if (!any) throw InvalidArgument("gram scan: no failing positive-definite grid point");
    return res;
}

Matrix sample_ensemble_with(Rng& rng, EnsembleKind kind, int m, int n) {
    Matrix A(m, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            A(i, j) = kind == EnsembleKind::GaussianNormalized ? rng.normal()
                                                               : rng.uniform(-1.0, 1.0);
    for (int j = 0; j < n; ++j) {
        double cn = std::sqrt(kern::nrm2sq(A.col(j), std::size_t(m)));
        if (cn <= tol::kZeroCol) throw ZeroColumn("ensemble: degenerate column draw");
        kern::scal(1.0 / cn, A.col(j), std::size_t(m));
    }
    return A;
}

Matrix sample_ensemble(const EnsembleSpec& spec) {
    if (spec.m < 1 || spec.n < spec.m)
        throw DimensionMismatch("ensemble: need 1 <= m <= n");
    Rng rng(spec.seed);
    return sample_ensemble_with(rng, spec.kind, spec.m, spec.n);
}

SparseVector sample_sparse_signal(Rng& rng, int n, int K) {
    if (K < 1 || K > n) throw DimensionMismatch("signal: K out of range");
    // Floyd's sampling of K distinct indices.
    std::vector<int> support;
    for (int j = n - K; j < n; ++j) {
        int t = rng.index(j + 1);
        if (std::find(support.begin(), support.end(), t) == support.end())
            support.push_back(t);
        else
            support.push_back(j);
    }
    std::sort(support.begin(), support.end());
    std::vector<double> values(static_cast<std::size_t>(K));
    for (double& v : values) {
        double mag = rng.uniform(0.5, 2.0);
        v = rng.uniform01() < 0.5 ? -mag : mag;
    }
    return SparseVector(n, std::move(support), std::move(values));
}

}
