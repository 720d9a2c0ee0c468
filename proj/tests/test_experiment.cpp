#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/experiment.hpp"
#include "pursuitlab/io.hpp"

using namespace pursuitlab;

namespace {

std::string csv_of(const ExperimentResult& r) {
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

std::string json_of(const ExperimentResult& r) {
    std::ostringstream out;
    write_json(out, r);
    return out.str();
}

std::string metadata_value(const ExperimentResult& r, const std::string& key) {
    for (const auto& [k, v] : r.metadata)
        if (k == key) return v;
    return "<missing:" + key + ">";
}

}

TEST_CASE("real formatting: 12 significant digits, C locale") {
    CHECK(format_real(2.0 / 3.0) == "0.666666666667");
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(-1.5) == "-1.5");
    CHECK(format_real(1e-12) == "1e-12");
    CHECK(format_real(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("table rejects ragged rows") {
    Table t;
    t.columns = {{"a", Table::Kind::Int}, {"b", Table::Kind::Real}};
    CHECK_NOTHROW(t.add_row({std::int64_t(1), 2.5}));
    CHECK_THROWS_AS(t.add_row({std::int64_t(1)}), DimensionMismatch);
}

TEST_CASE("csv layout: metadata comments, header, rows") {
    ExperimentResult r;
    r.mode = Mode::Bounds;
    r.metadata = {{"seed", "0"}, {"k_max", "1"}};
    r.table.columns = {{"K", Table::Kind::Int}, {"v", Table::Kind::Real},
                       {"tag", Table::Kind::Str}};
    r.table.add_row({std::int64_t(1), 0.5, std::string("x;y")});

    CHECK(csv_of(r) ==
          "# mode=bounds\n# seed=0\n# k_max=1\nK,v,tag\n1,0.5,x;y\n");
}

TEST_CASE("json mirrors the same table") {
    ExperimentResult r;
    r.mode = Mode::Bounds;
    r.metadata = {{"seed", "7"}};
    r.table.columns = {{"K", Table::Kind::Int}, {"v", Table::Kind::Real}};
    r.table.add_row({std::int64_t(2), -0.25});

    std::string j = json_of(r);
    CHECK(j.find("\"mode\": \"bounds\"") != std::string::npos);
    CHECK(j.find("\"seed\": \"7\"") != std::string::npos);
    CHECK(j.find("[2, -0.25]") != std::string::npos);
    CHECK(j.back() == '\n');
}

TEST_CASE("bounds mode emits one row per order") {
    ExperimentSpec spec;
    spec.mode = Mode::Bounds;
    spec.k_max = 5;
    ExperimentResult r = run_experiment(spec);
    CHECK(r.table.rows.size() == 5);
    CHECK(std::get<std::int64_t>(r.table.rows[0][0]) == 1);
    CHECK(std::get<std::int64_t>(r.table.rows[4][0]) == 5);
    CHECK(std::get<double>(r.table.rows[1][1]) ==
          doctest::Approx(0.5773502692).epsilon(1e-9));

    spec.k_max = 0;
    CHECK_THROWS_AS(run_experiment(spec), InvalidArgument);
}

TEST_CASE("counterexample mode reports the failing run and optional files") {
    ExperimentSpec spec;
    spec.mode = Mode::Counterexample;
    spec.emit_matrix = "cx_matrix_tmp.txt";
    spec.emit_signal = "cx_signal_tmp.txt";
    ExperimentResult r = run_experiment(spec);

    CHECK(metadata_value(r, "delta3") == "0.666666666667");
    CHECK(metadata_value(r, "ols_first_pick") == "1");
    CHECK(metadata_value(r, "success") == "0");
    CHECK(metadata_value(r, "true_support") == "2;3");
    CHECK(r.table.rows.size() == 3);

    // round-trip the emitted files
    Matrix A = read_matrix_file("cx_matrix_tmp.txt");
    SparseVector x = read_signal_file("cx_signal_tmp.txt");
    CHECK(A.rows() == 3);
    CHECK(x.support == std::vector<int>{1, 2});
    std::remove("cx_matrix_tmp.txt");
    std::remove("cx_signal_tmp.txt");
}

TEST_CASE("recover mode on the identity: success metadata") {
    ExperimentSpec spec;
    spec.mode = Mode::Recover;
    spec.matrix = std::string("identity_tmp.txt");
    spec.signal = std::string("identity_sig_tmp.txt");
    spec.K = 2;

    write_matrix_file("identity_tmp.txt", Matrix::identity(4));
    write_signal_file("identity_sig_tmp.txt", SparseVector(4, {0, 2}, {1.5, -2.0}));

    ExperimentResult r = run_experiment(spec);
    CHECK(metadata_value(r, "success") == "1");
    CHECK(metadata_value(r, "final_support") == "1;3");
    CHECK(metadata_value(r, "algorithm") == "ols");
    CHECK(r.table.rows.size() == 2);
    // largest coefficient selected first: index 3 (1-based) with score 2
    CHECK(std::get<std::int64_t>(r.table.rows[0][1]) == 3);
    CHECK(std::get<double>(r.table.rows[0][2]) == doctest::Approx(2.0));

    std::remove("identity_tmp.txt");
    std::remove("identity_sig_tmp.txt");
}

TEST_CASE("recover mode with random sources is deterministic per seed") {
    ExperimentSpec spec;
    spec.mode = Mode::Recover;
    spec.matrix = EnsembleSpec{EnsembleKind::GaussianNormalized, 12, 24, 0};
    spec.signal = RandomSparse{2};
    spec.K = 2;
    spec.seed = 77;

    std::string a = csv_of(run_experiment(spec));
    std::string b = csv_of(run_experiment(spec));
    CHECK(a == b);

    spec.seed = 78;
    CHECK(csv_of(run_experiment(spec)) != a);
}

TEST_CASE("rip mode lists every order up to K") {
    ExperimentSpec spec;
    spec.mode = Mode::Rip;
    spec.matrix = EnsembleSpec{EnsembleKind::GaussianNormalized, 8, 12, 0};
    spec.K = 3;
    spec.seed = 5;
    ExperimentResult r = run_experiment(spec);
    REQUIRE(r.table.rows.size() == 3);
    double prev = 0.0;
    for (const auto& row : r.table.rows) {
        double d = std::get<double>(row[1]);
        CHECK(d >= prev - 1e-12);
        prev = d;
        const std::string& side = std::get<std::string>(row[2]);
        CHECK((side == "UPPER" || side == "LOWER"));
    }
}

TEST_CASE("phase mode counts successes over per-trial streams") {
    ExperimentSpec spec;
    spec.mode = Mode::Phase;
    spec.matrix = EnsembleSpec{EnsembleKind::GaussianNormalized, 24, 32, 0};
    spec.signal = RandomSparse{1};
    spec.K = 1;
    spec.trials = 60;
    spec.seed = 11;

    ExperimentResult r = run_experiment(spec);
    CHECK(r.table.rows.size() == 60);
    double rate = std::stod(metadata_value(r, "ols_success_rate"));
    CHECK(rate >= 0.95);  // 1-sparse recovery at this aspect ratio

    // trial column is 1..trials in order
    for (int t = 0; t < 60; ++t)
        CHECK(std::get<std::int64_t>(r.table.rows[std::size_t(t)][0]) == t + 1);

    std::string a = csv_of(r);
    std::string b = csv_of(run_experiment(spec));
    CHECK(a == b);

    spec.matrix = std::string("not-an-ensemble");
    CHECK_THROWS_AS(run_experiment(spec), InvalidArgument);
}

TEST_CASE("lemma-check mode reports zero violations on gaussian draws") {
    ExperimentSpec spec;
    spec.mode = Mode::LemmaCheck;
    spec.matrix = EnsembleSpec{EnsembleKind::GaussianNormalized, 10, 14, 0};
    spec.K = 2;
    spec.trials = 12;
    spec.seed = 21;

    ExperimentResult r = run_experiment(spec);
    CHECK(r.table.rows.size() == 12);
    CHECK(metadata_value(r, "prop2_violations") == "0");
    CHECK(metadata_value(r, "lemma4_violations") == "0");
    CHECK(metadata_value(r, "lemma2_violations") == "0");
    CHECK(metadata_value(r, "lemma3_violations") == "0");
    CHECK(std::stol(metadata_value(r, "lemma2_instances")) > 0);
    CHECK(std::stol(metadata_value(r, "lemma3_instances")) > 0);
}

TEST_CASE("scan mode summarizes the family sweep") {
    ExperimentSpec spec;
    spec.mode = Mode::ScanGram;
    spec.grid_step = 0.05;
    ExperimentResult r = run_experiment(spec);
    REQUIRE(r.table.rows.size() == 1);
    double min_delta = std::get<double>(r.table.rows[0][4]);
    CHECK(min_delta >= 2.0 / 3.0 - 2.5e-2);
}

TEST_CASE("write_result hits files and stdout alike") {
    ExperimentSpec spec;
    spec.mode = Mode::Bounds;
    spec.k_max = 2;
    ExperimentResult r = run_experiment(spec);

    write_result("bounds_tmp.csv", OutputFormat::Csv, r);
    std::ifstream in("bounds_tmp.csv", std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv_of(r));
    std::remove("bounds_tmp.csv");
}

TEST_CASE("signal file dimension mismatch is caught") {
    ExperimentSpec spec;
    spec.mode = Mode::Recover;
    spec.matrix = std::string("mismatch_A_tmp.txt");
    spec.signal = std::string("mismatch_x_tmp.txt");
    spec.K = 1;
    write_matrix_file("mismatch_A_tmp.txt", Matrix::identity(3));
    write_signal_file("mismatch_x_tmp.txt", SparseVector(5, {0}, {1.0}));
    CHECK_THROWS_AS(run_experiment(spec), DimensionMismatch);
    std::remove("mismatch_A_tmp.txt");
    std::remove("mismatch_x_tmp.txt");
}
