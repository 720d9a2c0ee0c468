#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/experiment.hpp"
#include "pursuitlab/version.hpp"

namespace {

using pursuitlab::Algorithm;
using pursuitlab::EnsembleKind;
using pursuitlab::EnsembleSpec;
using pursuitlab::ExperimentSpec;
using pursuitlab::Mode;
using pursuitlab::OutputFormat;
using pursuitlab::RandomSparse;

// "gaussian:m:n" or "uniform:m:n"
EnsembleSpec parse_ensemble(const std::string& text) {
    auto first = text.find(':');
    auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw CLI::ValidationError("--ensemble", "expected kind:m:n");
    std::string kind = text.substr(0, first);
    EnsembleSpec es;
    if (kind == "gaussian")
        es.kind = EnsembleKind::GaussianNormalized;
    else if (kind == "uniform")
        es.kind = EnsembleKind::UniformNormalized;
    else
        throw CLI::ValidationError("--ensemble", "kind must be gaussian or uniform");
    try {
        es.m = std::stoi(text.substr(first + 1, second - first - 1));
        es.n = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--ensemble", "m and n must be integers");
    }
    return es;
}

struct CommonArgs {
    std::string matrix_file;
    std::string ensemble;
    std::string signal_file;
    int random_sparse = 0;
    std::string format = "csv";
    std::string out = "-";
    std::uint64_t seed = 0;
};

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--format", args.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", args.out, "Output path, or - for stdout");
    cmd->add_option("--seed", args.seed, "Master seed for all randomness");
}

void add_matrix_flags(CLI::App* cmd, CommonArgs& args) {
    auto* file = cmd->add_option("--matrix", args.matrix_file, "Matrix file to read");
    auto* ens = cmd->add_option("--ensemble", args.ensemble,
                                "Random ensemble spec kind:m:n (gaussian or uniform)");
    file->excludes(ens);
    ens->excludes(file);
}

void add_signal_flags(CLI::App* cmd, CommonArgs& args) {
    auto* file = cmd->add_option("--signal", args.signal_file, "Sparse signal file to read");
    auto* rnd = cmd->add_option("--random-sparse", args.random_sparse,
                                "Draw a random K-sparse signal with this K");
    file->excludes(rnd);
    rnd->excludes(file);
}

void fill_common(ExperimentSpec& spec, const CommonArgs& args) {
    if (!args.matrix_file.empty()) spec.matrix = args.matrix_file;
    if (!args.ensemble.empty()) spec.matrix = parse_ensemble(args.ensemble);
    if (!args.signal_file.empty()) spec.signal = args.signal_file;
    if (args.random_sparse > 0) spec.signal = RandomSparse{args.random_sparse};
    spec.format = args.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    spec.out = args.out;
    spec.seed = args.seed;
}

int execute(const ExperimentSpec& spec) {
    auto start = std::chrono::steady_clock::now();
    pursuitlab::ExperimentResult result = pursuitlab::run_experiment(spec);
    pursuitlab::write_result(spec.out, spec.format, result);
    auto stop = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    std::cerr << "[" << pursuitlab::mode_name(spec.mode) << "] wall time: "
              << pursuitlab::format_real(ms) << " ms\n";
    return 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Sparse recovery laboratory: greedy pursuit, exact restricted "
                 "isometry constants, and named constructions"};
    app.set_version_flag("--version", std::string(pursuitlab::kVersion));
    app.require_subcommand(1);

    ExperimentSpec spec;
    CommonArgs common;
    std::string algorithm = "ols";

    auto* recover = app.add_subcommand("recover", "Run one greedy recovery and trace it");
    add_matrix_flags(recover, common);
    add_signal_flags(recover, common);
    recover->add_option("--k", spec.K, "Target sparsity (number of selections)")->required();
    recover->add_option("--algorithm", algorithm, "ols, omp, or mols")
        ->check(CLI::IsMember({"ols", "omp", "mols"}));
    recover->add_option("--L", spec.L, "Selections per iteration (mols only)");
    add_output_flags(recover, common);

    auto* rip = app.add_subcommand("rip", "Exact restricted isometry constants up to order K");
    add_matrix_flags(rip, common);
    rip->add_option("--k", spec.K, "Largest order to certify")->required();
    add_output_flags(rip, common);

    auto* cx = app.add_subcommand("counterexample",
                                  "Emit the 3x3 instance where OLS misses a 2-sparse support");
    cx->add_option("--emit-matrix", spec.emit_matrix, "Also write the matrix to this file");
    cx->add_option("--emit-signal", spec.emit_signal, "Also write the signal to this file");
    add_output_flags(cx, common);

    auto* bounds = app.add_subcommand("bounds", "Tabulate recovery thresholds for K = 1..k-max");
    bounds->add_option("--k-max", spec.k_max, "Largest K to tabulate")->required();
    add_output_flags(bounds, common);

    auto* phase = app.add_subcommand("phase",
                                     "Success rates of OLS/OMP/MOLS over random trials");
    add_matrix_flags(phase, common);
    phase->add_option("--k", spec.K, "Sparsity of the planted signal")->required();
    phase->add_option("--L", spec.L, "MOLS selections per iteration");
    phase->add_option("--trials", spec.trials, "Number of random trials");
    add_output_flags(phase, common);

    auto* lemma = app.add_subcommand("lemma-check",
                                     "Verify the supporting inequalities on random instances");
    add_matrix_flags(lemma, common);
    lemma->add_option("--k", spec.K, "Sparsity of the planted signal")->required();
    lemma->add_option("--trials", spec.trials, "Number of random trials");
    add_output_flags(lemma, common);

    auto* scan = app.add_subcommand("scan-gram",
                                    "Scan the two-parameter Gram family for failing instances");
    scan->add_option("--step", spec.grid_step, "Grid step over (a, b)")->required();
    add_output_flags(scan, common);

    CLI11_PARSE(app, argc, argv);

    if (recover->parsed()) {
        spec.mode = Mode::Recover;
        spec.algorithm = algorithm == "omp"    ? Algorithm::Omp
                         : algorithm == "mols" ? Algorithm::Mols
                                               : Algorithm::Ols;
    } else if (rip->parsed()) {
        spec.mode = Mode::Rip;
    } else if (cx->parsed()) {
        spec.mode = Mode::Counterexample;
    } else if (bounds->parsed()) {
        spec.mode = Mode::Bounds;
    } else if (phase->parsed()) {
        spec.mode = Mode::Phase;
    } else if (lemma->parsed()) {
        spec.mode = Mode::LemmaCheck;
    } else {
        spec.mode = Mode::ScanGram;
    }
    fill_common(spec, common);

    try {
        return execute(spec);
    } catch (const pursuitlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pursuitlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
