#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pursuitlab/constructions.hpp"
#include "pursuitlab/pursuit.hpp"

namespace pursuitlab {

enum class Mode { Recover, Rip, Counterexample, Bounds, Phase, LemmaCheck, ScanGram };

enum class OutputFormat { Csv, Json };

// A result table: typed named columns plus ordered key=value metadata.
// Everything written to an output file comes from here, formatted with 12
// significant digits; the writers add nothing that varies between runs.
struct Table {
    enum class Kind { Int, Real, Str };

    struct Column {
        std::string name;
        Kind kind;
    };

    using Cell = std::variant<std::int64_t, double, std::string>;

    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

struct ExperimentResult {
    Mode mode = Mode::Recover;
    Table table;
    std::vector<std::pair<std::string, std::string>> metadata;  // emission order
};

const char* mode_name(Mode mode);
std::string format_real(double v);  // 12 significant digits, C locale

void write_csv(std::ostream& out, const ExperimentResult& result);
void write_json(std::ostream& out, const ExperimentResult& result);

// Write to `path`, or to stdout when path is "-". Always LF line endings.
void write_result(const std::string& path, OutputFormat format, const ExperimentResult& result);

// Where the measurement matrix comes from: a file, or a seeded ensemble.
using MatrixSource = std::variant<std::string, EnsembleSpec>;

// Where the signal comes from: a file, or a random K-sparse draw.
struct RandomSparse {
    int K = 0;
};
using SignalSource = std::variant<std::string, RandomSparse>;

struct ExperimentSpec {
    Mode mode = Mode::Recover;
    std::optional<MatrixSource> matrix;
    std::optional<SignalSource> signal;
    int K = 0;
    int L = 1;
    Algorithm algorithm = Algorithm::Ols;
    int trials = 1;
    std::uint64_t seed = 0;
    int k_max = 0;           // bounds
    double grid_step = 0.0;  // scan-gram
    std::string emit_matrix;   // counterexample: optional instance dump
    std::string emit_signal;
    OutputFormat format = OutputFormat::Csv;
    std::string out = "-";
};

ExperimentResult cmd_recover(const ExperimentSpec& spec);
ExperimentResult cmd_rip(const ExperimentSpec& spec);
ExperimentResult cmd_counterexample(const ExperimentSpec& spec);
ExperimentResult cmd_bounds(const ExperimentSpec& spec);
ExperimentResult cmd_phase(const ExperimentSpec& spec);
ExperimentResult cmd_lemma_check(const ExperimentSpec& spec);
ExperimentResult cmd_scan_gram(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

}
