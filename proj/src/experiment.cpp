#include "pursuitlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/io.hpp"
#include "pursuitlab/matcore.hpp"
#include "pursuitlab/parallel.hpp"
#include "pursuitlab/rip.hpp"
#include "pursuitlab/tolerances.hpp"
#include "pursuitlab/version.hpp"

namespace pursuitlab {

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size()) throw DimensionMismatch("table row width");
    rows.push_back(std::move(cells));
}

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::Recover: return "recover";
        case Mode::Rip: return "rip";
        case Mode::Counterexample: return "counterexample";
        case Mode::Bounds: return "bounds";
        case Mode::Phase: return "phase";
        case Mode::LemmaCheck: return "lemma-check";
        case Mode::ScanGram: return "scan-gram";
    }
    return "?";
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string format_cell(const Table::Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell))
        return std::to_string(std::get<std::int64_t>(cell));
    if (std::holds_alternative<double>(cell)) return format_real(std::get<double>(cell));
    return std::get<std::string>(cell);
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// 1-based semicolon-joined index list for output surfaces.
std::string join_indices_1based(const std::vector<int>& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out.push_back(';');
        out += std::to_string(idx[i] + 1);
    }
    return out;
}

}

void write_csv(std::ostream& out, const ExperimentResult& result) {
    out << "# mode=" << mode_name(result.mode) << "\n";
    for (const auto& [k, v] : result.metadata) out << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < result.table.columns.size(); ++c)
        out << (c ? "," : "") << result.table.columns[c].name;
    out << "\n";
    for (const auto& row : result.table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_cell(row[c]);
        out << "\n";
    }
}

void write_json(std::ostream& out, const ExperimentResult& result) {
    out << "{\n  \"mode\": \"" << mode_name(result.mode) << "\",\n  \"metadata\": {";
    for (std::size_t i = 0; i < result.metadata.size(); ++i) {
        out << (i ? ", " : "") << "\"" << json_escape(result.metadata[i].first) << "\": \""
            << json_escape(result.metadata[i].second) << "\"";
    }
    out << "},\n  \"columns\": [";
    for (std::size_t c = 0; c < result.table.columns.size(); ++c)
        out << (c ? ", " : "") << "\"" << json_escape(result.table.columns[c].name) << "\"";
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < result.table.rows.size(); ++r) {
        out << "    [";
        const auto& row = result.table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? ", " : "");
            if (std::holds_alternative<std::string>(row[c]))
                out << "\"" << json_escape(std::get<std::string>(row[c])) << "\"";
            else
                out << format_cell(row[c]);
        }
        out << "]" << (r + 1 < result.table.rows.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

void write_result(const std::string& path, OutputFormat format, const ExperimentResult& result) {
    if (path == "-") {
        if (format == OutputFormat::Csv)
            write_csv(std::cout, result);
        else
            write_json(std::cout, result);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    if (format == OutputFormat::Csv)
        write_csv(out, result);
    else
        write_json(out, result);
}

namespace {

void push_common_metadata(ExperimentResult& result, const ExperimentSpec& spec) {
    result.metadata.emplace_back("seed", std::to_string(spec.seed));
    result.metadata.emplace_back("version", kVersion);
}

std::string ensemble_kind_name(EnsembleKind kind) {
    return kind == EnsembleKind::GaussianNormalized ? "gaussian" : "uniform";
}

// Resolve the matrix, then (if needed) the signal, from one per-run stream.
// Stream 0 of the seed drives single-instance modes; batch modes use stream
// `t` for trial t with the same draw order (matrix first, then signal).
Matrix resolve_matrix(const ExperimentSpec& spec, Rng& rng) {
    if (!spec.matrix.has_value()) throw InvalidArgument("a matrix source is required");
    if (std::holds_alternative<std::string>(*spec.matrix))
        return read_matrix_file(std::get<std::string>(*spec.matrix));
    const EnsembleSpec& es = std::get<EnsembleSpec>(*spec.matrix);
    if (es.m < 1 || es.n < es.m) throw DimensionMismatch("ensemble: need 1 <= m <= n");
    return sample_ensemble_with(rng, es.kind, es.m, es.n);
}

SparseVector resolve_signal(const ExperimentSpec& spec, const Matrix& A, Rng& rng) {
    if (!spec.signal.has_value()) throw InvalidArgument("a signal source is required");
    if (std::holds_alternative<std::string>(*spec.signal)) {
        SparseVector x = read_signal_file(std::get<std::string>(*spec.signal));
        if (x.dim != A.cols()) throw DimensionMismatch("signal dimension does not match matrix");
        return x;
    }
    return sample_sparse_signal(rng, A.cols(), std::get<RandomSparse>(*spec.signal).K);
}

const char* algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::Ols: return "ols";
        case Algorithm::Omp: return "omp";
        case Algorithm::Mols: return "mols";
    }
    return "?";
}

PursuitTrace dispatch_run(const Matrix& A, const Vector& y, const ExperimentSpec& spec) {
    switch (spec.algorithm) {
        case Algorithm::Ols: return run_ols(A, y, spec.K);
        case Algorithm::Omp: return run_omp(A, y, spec.K);
        case Algorithm::Mols: return run_mols(A, y, spec.K, spec.L);
    }
    throw InvalidArgument("unknown algorithm");
}

}

ExperimentResult cmd_recover(const ExperimentSpec& spec) {
    Rng rng = Rng::stream(spec.seed, 0);
    Matrix A = resolve_matrix(spec, rng);
    SparseVector x = resolve_signal(spec, A, rng);
    Vector y = matvec(A, x.to_dense());

    PursuitTrace trace = dispatch_run(A, y, spec);

    ExperimentResult result;
    result.mode = Mode::Recover;
    result.table.columns = {{"iteration", Table::Kind::Int},
                            {"selected_index", Table::Kind::Int},
                            {"score", Table::Kind::Real},
                            {"residual_norm", Table::Kind::Real}};
    for (std::size_t it = 0; it < trace.iterations.size(); ++it) {
        const auto& rec = trace.iterations[it];
        for (int idx : rec.selected)
            result.table.add_row({std::int64_t(it + 1), std::int64_t(idx + 1),
                                  rec.scores[std::size_t(idx)], rec.residual_norm_after});
    }

    bool success = same_support(trace.final_support, x.support);
    push_common_metadata(result, spec);
    result.metadata.emplace_back("algorithm", algorithm_name(spec.algorithm));
    result.metadata.emplace_back("m", std::to_string(A.rows()));
    result.metadata.emplace_back("n", std::to_string(A.cols()));
    result.metadata.emplace_back("k", std::to_string(spec.K));
    result.metadata.emplace_back("L", std::to_string(spec.L));
    result.metadata.emplace_back("true_support", join_indices_1based(x.support));
    result.metadata.emplace_back("final_support", join_indices_1based(trace.final_support));
    result.metadata.emplace_back("residual_norm", format_real(trace.final_residual_norm));
    result.metadata.emplace_back("early_stop", trace.early_stop ? "1" : "0");
    result.metadata.emplace_back("success", success ? "1" : "0");
    return result;
}

ExperimentResult cmd_rip(const ExperimentSpec& spec) {
    Rng rng = Rng::stream(spec.seed, 0);
    Matrix A = resolve_matrix(spec, rng);
    if (spec.K < 1 || spec.K > A.cols()) throw DimensionMismatch("rip: K out of range");

    ExperimentResult result;
    result.mode = Mode::Rip;
    result.table.columns = {{"k", Table::Kind::Int},
                            {"delta", Table::Kind::Real},
                            {"side", Table::Kind::Str},
                            {"extremal_eigenvalue", Table::Kind::Real},
                            {"extremal_subset", Table::Kind::Str},
                            {"satisfies_rip", Table::Kind::Int}};
    for (int k = 1; k <= spec.K; ++k) {
        RipCertificate cert = exact_delta(A, k);
        result.table.add_row({std::int64_t(k), cert.delta,
                              std::string(cert.side == RipCertificate::Side::Upper ? "UPPER"
                                                                                   : "LOWER"),
                              cert.extremal_eigenvalue,
                              join_indices_1based(cert.extremal_subset),
                              std::int64_t(cert.satisfies_rip ? 1 : 0)});
    }
    push_common_metadata(result, spec);
    result.metadata.emplace_back("m", std::to_string(A.rows()));
    result.metadata.emplace_back("n", std::to_string(A.cols()));
    result.metadata.emplace_back("k", std::to_string(spec.K));
    return result;
}

ExperimentResult cmd_counterexample(const ExperimentSpec& spec) {
    CounterexampleK2 cx = counterexample_k2();
    if (!spec.emit_matrix.empty()) write_matrix_file(spec.emit_matrix, cx.A);
    if (!spec.emit_signal.empty()) write_signal_file(spec.emit_signal, cx.x);

    double delta3 = exact_delta(cx.A, 3).delta;
    PursuitTrace trace = run_ols(cx.A, cx.y, 2);

    ExperimentResult result;
    result.mode = Mode::Counterexample;
    result.table.columns = {{"index", Table::Kind::Int},
                            {"x", Table::Kind::Real},
                            {"y", Table::Kind::Real}};
    Vector xd = cx.x.to_dense();
    for (int i = 0; i < 3; ++i)
        result.table.add_row({std::int64_t(i + 1), xd[std::size_t(i)], cx.y[std::size_t(i)]});

    push_common_metadata(result, spec);
    result.metadata.emplace_back("delta3", format_real(delta3));
    result.metadata.emplace_back("true_support", join_indices_1based(cx.x.support));
    result.metadata.emplace_back("ols_first_pick",
                                 std::to_string(trace.iterations.front().selected.front() + 1));
    result.metadata.emplace_back("ols_final_support", join_indices_1based(trace.final_support));
    result.metadata.emplace_back(
        "success", same_support(trace.final_support, cx.x.support) ? "1" : "0");
    return result;
}

ExperimentResult cmd_bounds(const ExperimentSpec& spec) {
    if (spec.k_max < 1) throw InvalidArgument("bounds: --k-max must be >= 1");
    ExperimentResult result;
    result.mode = Mode::Bounds;
    result.table.columns = {{"K", Table::Kind::Int},
                            {"sufficient_new", Table::Kind::Real},
                            {"necessary_new", Table::Kind::Real},
                            {"sufficient_prior", Table::Kind::Real},
                            {"necessary_prior", Table::Kind::Real},
                            {"general_matrix", Table::Kind::Real}};
    for (int k = 1; k <= spec.k_max; ++k) {
        BoundTable t = bound_table(k);
        result.table.add_row({std::int64_t(k), t.sufficient_new, t.necessary_new,
                              t.sufficient_prior, t.necessary_prior, t.general_matrix});
    }
    push_common_metadata(result, spec);
    result.metadata.emplace_back("k_max", std::to_string(spec.k_max));
    return result;
}

ExperimentResult cmd_phase(const ExperimentSpec& spec) {
    if (!spec.matrix.has_value() || !std::holds_alternative<EnsembleSpec>(*spec.matrix))
        throw InvalidArgument("phase: requires an --ensemble matrix source");
    const EnsembleSpec& es = std::get<EnsembleSpec>(*spec.matrix);
    if (spec.trials < 1) throw InvalidArgument("phase: --trials must be >= 1");
    int K = spec.K;
    if (K < 1) throw InvalidArgument("phase: --k must be >= 1");

    struct TrialOutcome {
        int ols = 0, omp = 0, mols = 0;
    };
    std::vector<TrialOutcome> outcomes(std::size_t(spec.trials));

    parallel_chunks(std::size_t(spec.trials), [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            Rng rng = Rng::stream(spec.seed, t);
            Matrix A = sample_ensemble_with(rng, es.kind, es.m, es.n);
            SparseVector x = sample_sparse_signal(rng, es.n, K);
            Vector y = matvec(A, x.to_dense());

            PursuitTrace ols = run_ols(A, y, K);
            PursuitTrace omp = run_omp(A, y, K);
            PursuitTrace mols = run_mols(A, y, K, spec.L);

            auto& oc = outcomes[t];
            oc.ols = same_support(ols.final_support, x.support) ? 1 : 0;
            oc.omp = same_support(omp.final_support, x.support) ? 1 : 0;
            // MOLS stops at |support| >= K by design, so judge it by coverage
            // of the true support plus an exact-representation residual.
            std::vector<int> fs = mols.final_support;
            bool covered = std::includes(fs.begin(), fs.end(), x.support.begin(), x.support.end());
            oc.mols = covered && mols.final_residual_norm <= 1e-9 ? 1 : 0;
        }
    });

    ExperimentResult result;
    result.mode = Mode::Phase;
    result.table.columns = {{"trial", Table::Kind::Int},
                            {"ols_success", Table::Kind::Int},
                            {"omp_success", Table::Kind::Int},
                            {"mols_success", Table::Kind::Int}};
    long ols_total = 0, omp_total = 0, mols_total = 0;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const auto& oc = outcomes[t];
        ols_total += oc.ols;
        omp_total += oc.omp;
        mols_total += oc.mols;
        result.table.add_row({std::int64_t(t + 1), std::int64_t(oc.ols), std::int64_t(oc.omp),
                              std::int64_t(oc.mols)});
    }

    push_common_metadata(result, spec);
    result.metadata.emplace_back("kind", ensemble_kind_name(es.kind));
    result.metadata.emplace_back("m", std::to_string(es.m));
    result.metadata.emplace_back("n", std::to_string(es.n));
    result.metadata.emplace_back("k", std::to_string(K));
    result.metadata.emplace_back("L", std::to_string(spec.L));
    result.metadata.emplace_back("trials", std::to_string(spec.trials));
    double tr = double(spec.trials);
    result.metadata.emplace_back("ols_success_rate", format_real(double(ols_total) / tr));
    result.metadata.emplace_back("omp_success_rate", format_real(double(omp_total) / tr));
    result.metadata.emplace_back("mols_success_rate", format_real(double(mols_total) / tr));
    return result;
}

namespace {

// Exact constants of one instance, computed lazily per order.
class DeltaCache {
public:
    explicit DeltaCache(const Matrix& A) : A_(A) {}

    double at(int order) {
        auto it = cache_.find(order);
        if (it != cache_.end()) return it->second;
        double d = exact_delta(A_, order).delta;
        cache_.emplace(order, d);
        return d;
    }

private:
    const Matrix& A_;
    std::map<int, double> cache_;
};

struct LemmaCounts {
    long checks = 0;
    long violations = 0;
    bool evaluated() const { return checks > 0; }
};

}

ExperimentResult cmd_lemma_check(const ExperimentSpec& spec) {
    if (!spec.matrix.has_value() || !std::holds_alternative<EnsembleSpec>(*spec.matrix))
        throw InvalidArgument("lemma-check: requires an --ensemble matrix source");
    const EnsembleSpec& es = std::get<EnsembleSpec>(*spec.matrix);
    if (spec.trials < 1) throw InvalidArgument("lemma-check: --trials must be >= 1");
    int K = spec.K;
    if (K < 1 || K > es.m) throw InvalidArgument("lemma-check: --k out of range");

    ExperimentResult result;
    result.mode = Mode::LemmaCheck;
    result.table.columns = {{"trial", Table::Kind::Int},
                            {"delta_kp1", Table::Kind::Real},
                            {"prop2_checks", Table::Kind::Int},
                            {"prop2_violations", Table::Kind::Int},
                            {"lemma4_checks", Table::Kind::Int},
                            {"lemma4_violations", Table::Kind::Int},
                            {"lemma2_checks", Table::Kind::Int},
                            {"lemma2_violations", Table::Kind::Int},
                            {"lemma3_checks", Table::Kind::Int},
                            {"lemma3_violations", Table::Kind::Int}};

    long inst_prop2 = 0, inst_lemma4 = 0, inst_lemma2 = 0, inst_lemma3 = 0;
    long viol_prop2 = 0, viol_lemma4 = 0, viol_lemma2 = 0, viol_lemma3 = 0;

    const double slack = tol::kLemmaSlack;

    for (int trial = 0; trial < spec.trials; ++trial) {
        Rng rng = Rng::stream(spec.seed, std::uint64_t(trial));
        Matrix A = sample_ensemble_with(rng, es.kind, es.m, es.n);
        SparseVector x = sample_sparse_signal(rng, es.n, K);
        Vector y = matvec(A, x.to_dense());

        DeltaCache delta(A);
        double delta_kp1 = delta.at(K + 1);
        double prop2_threshold = 1.0 / std::sqrt(double(K) + 1.0);

        PursuitTrace trace = run_ols(A, y, K);

        LemmaCounts prop2, lemma4, lemma2, lemma3;

        int steps = int(trace.iterations.size());
        for (int k = 0; k <= steps; ++k) {
            // State entering iteration k+1: T^k selected so far, residual r^k.
            std::vector<int> Tk;
            if (k > 0) Tk = trace.iterations[std::size_t(k - 1)].support_after;

            // The analytic statements cover correct partial selections only.
            if (!std::includes(x.support.begin(), x.support.end(), Tk.begin(), Tk.end()))
                break;
            std::vector<int> missing;
            std::set_difference(x.support.begin(), x.support.end(), Tk.begin(), Tk.end(),
                                std::back_inserter(missing));

            Matrix ATk = A.columns(Tk);
            Vector rk = k == 0 ? y : project_complement(ATk, y);
            double rk_sq = norm_sq(rk);

            // Lemma 3: projected candidate norms against the certified floor.
            if (k <= K) {
                double d = delta.at(int(Tk.size()) + 1);
                if (d < 1.0) {
                    double floor_sq = 1.0 - d * d;
                    std::vector<char> in_Tk(std::size_t(A.cols()), 0);
                    for (int t : Tk) in_Tk[std::size_t(t)] = 1;
                    HouseholderQr qr(ATk);
                    Vector column(std::size_t(A.rows()));
                    for (int i = 0; i < A.cols(); ++i) {
                        if (in_Tk[std::size_t(i)]) continue;
                        column.assign(A.col(i), A.col(i) + A.rows());
                        double obs_sq = Tk.empty() ? norm_sq(column)
                                                   : qr.complement_norm_sq(column);
                        ++lemma3.checks;
                        if (obs_sq < floor_sq - slack) ++lemma3.violations;
                    }
                }
            }

            if (missing.empty()) break;  // fully recovered; the remaining
                                         // statements need T \ T^k nonempty

            Vector x_missing;
            for (int i : missing)
                x_missing.push_back(x.values[std::size_t(
                    std::lower_bound(x.support.begin(), x.support.end(), i) -
                    x.support.begin())]);
            double xm_norm = norm(x_missing);

            // Lemma 2 along the trajectory: S1 = T^k, S2 = supp(x), u the
            // missing part of x; P_comp(A u) is exactly r^k.
            {
                double d = delta.at(K);
                if (d < 1.0) {
                    Vector u(std::size_t(A.cols()), 0.0);
                    for (std::size_t j = 0; j < missing.size(); ++j)
                        u[std::size_t(missing[j])] = x_missing[j];
                    Vector v = project_complement(ATk, matvec(A, u));
                    double vsq = norm_sq(v);
                    double usq = norm_sq(x_missing);
                    ++lemma2.checks;
                    if (vsq < (1.0 - d) * usq - slack || vsq > (1.0 + d) * usq + slack)
                        ++lemma2.violations;
                }
            }

            // Scores for Prop 2 / Lemma 4 (normalized correlation rule).
            std::vector<double> scores = selection_scores(A, Tk, rk, ScoreRule::Ols);

            double best_missing = 0.0;
            for (int i : missing) best_missing = std::max(best_missing, scores[std::size_t(i)]);
            double best_outside = 0.0;
            int j0 = -1;
            for (int j = 0; j < A.cols(); ++j) {
                bool in_support = std::binary_search(x.support.begin(), x.support.end(), j);
                if (in_support) continue;
                if (j0 < 0 || scores[std::size_t(j)] > best_outside) j0 = j;
                best_outside = std::max(best_outside, scores[std::size_t(j)]);
            }

            double mid = rk_sq / (std::sqrt(double(missing.size())) * xm_norm);

            // Prop 2, both inequalities, under the order-(K+1) hypothesis.
            if (delta_kp1 < prop2_threshold && j0 >= 0) {
                prop2.checks += 2;
                if (best_missing < mid - slack) ++prop2.violations;
                if (best_outside >= mid + slack) ++prop2.violations;
            }

            // Lemma 4 with the proof's alpha, under its own hypothesis.
            if (j0 >= 0) {
                Vector aj0(A.col(j0), A.col(j0) + A.rows());
                double pn_sq = Tk.empty() ? norm_sq(aj0)
                                          : HouseholderQr(ATk).complement_norm_sq(aj0);
                if (pn_sq > tol::kDegenerateCol * tol::kDegenerateCol) {
                    double alpha = double(missing.size()) / pn_sq;
                    double hyp = 1.0 / std::sqrt(alpha + 1.0);
                    if (delta.at(int(missing.size()) + 1) < hyp) {
                        for (int j = 0; j < A.cols(); ++j) {
                            if (std::binary_search(x.support.begin(), x.support.end(), j))
                                continue;
                            double corr = std::fabs(
                                kern::dot(A.col(j), rk.data(), std::size_t(A.rows())));
                            ++lemma4.checks;
                            if (rk_sq < std::sqrt(alpha) * xm_norm * corr - slack)
                                ++lemma4.violations;
                        }
                    }
                }
            }
        }

        // Random-subset instantiations of Lemma 2, three per instance.
        for (int draw = 0; draw < 3; ++draw) {
            int s1 = rng.index(3);      // |S1| in {0, 1, 2}
            int s2 = 1 + rng.index(2);  // |S2| in {1, 2}
            std::vector<int> all(std::size_t(A.cols()));
            for (int i = 0; i < A.cols(); ++i) all[std::size_t(i)] = i;
            for (int i = 0; i < s1 + s2; ++i)
                std::swap(all[std::size_t(i)], all[std::size_t(i + rng.index(A.cols() - i))]);
            std::vector<int> S1(all.begin(), all.begin() + s1);
            std::vector<int> S2(all.begin() + s1, all.begin() + s1 + s2);
            std::sort(S1.begin(), S1.end());
            std::sort(S2.begin(), S2.end());

            double d = delta.at(s1 + s2);
            Vector u(std::size_t(A.cols()), 0.0);
            double usq = 0.0;
            for (int i : S2) {
                double v = rng.normal();
                u[std::size_t(i)] = v;
                usq += v * v;
            }
            if (usq == 0.0 || d >= 1.0) continue;
            Vector v = project_complement(A.columns(S1), matvec(A, u));
            double vsq = norm_sq(v);
            ++lemma2.checks;
            if (vsq < (1.0 - d) * usq - slack || vsq > (1.0 + d) * usq + slack)
                ++lemma2.violations;
        }

        inst_prop2 += prop2.evaluated() ? 1 : 0;
        inst_lemma4 += lemma4.evaluated() ? 1 : 0;
        inst_lemma2 += lemma2.evaluated() ? 1 : 0;
        inst_lemma3 += lemma3.evaluated() ? 1 : 0;
        viol_prop2 += prop2.violations;
        viol_lemma4 += lemma4.violations;
        viol_lemma2 += lemma2.violations;
        viol_lemma3 += lemma3.violations;

        result.table.add_row({std::int64_t(trial + 1), delta_kp1,
                              std::int64_t(prop2.checks), std::int64_t(prop2.violations),
                              std::int64_t(lemma4.checks), std::int64_t(lemma4.violations),
                              std::int64_t(lemma2.checks), std::int64_t(lemma2.violations),
                              std::int64_t(lemma3.checks), std::int64_t(lemma3.violations)});
    }

    push_common_metadata(result, spec);
    result.metadata.emplace_back("kind", ensemble_kind_name(es.kind));
    result.metadata.emplace_back("m", std::to_string(es.m));
    result.metadata.emplace_back("n", std::to_string(es.n));
    result.metadata.emplace_back("k", std::to_string(K));
    result.metadata.emplace_back("trials", std::to_string(spec.trials));
    result.metadata.emplace_back("prop2_instances", std::to_string(inst_prop2));
    result.metadata.emplace_back("lemma4_instances", std::to_string(inst_lemma4));
    result.metadata.emplace_back("lemma2_instances", std::to_string(inst_lemma2));
    result.metadata.emplace_back("lemma3_instances", std::to_string(inst_lemma3));
    result.metadata.emplace_back("prop2_violations", std::to_string(viol_prop2));
    result.metadata.emplace_back("lemma4_violations", std::to_string(viol_lemma4));
    result.metadata.emplace_back("lemma2_violations", std::to_string(viol_lemma2));
    result.metadata.emplace_back("lemma3_violations", std::to_string(viol_lemma3));
    return result;
}

ExperimentResult cmd_scan_gram(const ExperimentSpec& spec) {
    GramScanResult scan = scan_gram_family(spec.grid_step);

    ExperimentResult result;
    result.mode = Mode::ScanGram;
    result.table.columns = {{"step", Table::Kind::Real},
                            {"points_total", Table::Kind::Int},
                            {"points_valid", Table::Kind::Int},
                            {"points_failing", Table::Kind::Int},
                            {"min_delta3", Table::Kind::Real},
                            {"argmin_a", Table::Kind::Real},
                            {"argmin_b", Table::Kind::Real}};
    result.table.add_row({scan.step, std::int64_t(scan.points_total),
                          std::int64_t(scan.points_valid), std::int64_t(scan.points_failing),
                          scan.min_delta3, scan.argmin_a, scan.argmin_b});
    push_common_metadata(result, spec);
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    switch (spec.mode) {
        case Mode::Recover: return cmd_recover(spec);
        case Mode::Rip: return cmd_rip(spec);
        case Mode::Counterexample: return cmd_counterexample(spec);
        case Mode::Bounds: return cmd_bounds(spec);
        case Mode::Phase: return cmd_phase(spec);
        case Mode::LemmaCheck: return cmd_lemma_check(spec);
        case Mode::ScanGram: return cmd_scan_gram(spec);
    }
    throw InvalidArgument("unknown mode");
}

}
