#include "pursuitlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

// Pulls the next non-comment, non-blank line; false on end of input.
bool next_data_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

double parse_double(const std::string& tok, const std::string& name, int lineno) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) fail(name, lineno, "bad number '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(name, lineno, "bad number '" + tok + "'");
    }
}

long parse_long(const std::string& tok, const std::string& name, int lineno) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) fail(name, lineno, "bad integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(name, lineno, "bad integer '" + tok + "'");
    }
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

}

Matrix read_matrix(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    if (!next_data_line(in, line, lineno)) fail(name, lineno, "missing header line");
    auto head = tokens(line);
    if (head.size() != 2) fail(name, lineno, "header must be 'm n'");
    long m = parse_long(head[0], name, lineno);
    long n = parse_long(head[1], name, lineno);
    if (m < 1 || n < 1 || m > 100000 || n > 100000)
        fail(name, lineno, "unreasonable dimensions");

    Matrix A(static_cast<int>(m), static_cast<int>(n));
    for (long i = 0; i < m; ++i) {
        if (!next_data_line(in, line, lineno))
            fail(name, lineno, "expected " + std::to_string(m) + " rows, got " + std::to_string(i));
        auto row = tokens(line);
        if (long(row.size()) != n)
            fail(name, lineno, "expected " + std::to_string(n) + " entries in row");
        for (long j = 0; j < n; ++j)
            A(int(i), int(j)) = parse_double(row[std::size_t(j)], name, lineno);
    }
    try {
        A.check_finite();
    } catch (const Error&) {
        fail(name, lineno, "non-finite entry");
    }
    return A;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_matrix(in, path);
}

void write_matrix_file(const std::string& path, const Matrix& A) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw ParseError(path + ": cannot open for writing");
    char buf[64];
    out << A.rows() << " " << A.cols() << "\n";
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", A(i, j));
            out << (j ? " " : "") << buf;
        }
        out << "\n";
    }
}

SparseVector read_signal(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    if (!next_data_line(in, line, lineno)) fail(name, lineno, "missing header line");
    auto head = tokens(line);
    if (head.size() != 2) fail(name, lineno, "header must be 'n K'");
    long n = parse_long(head[0], name, lineno);
    long K = parse_long(head[1], name, lineno);
    if (n < 1 || n > 100000 || K < 0 || K > n) fail(name, lineno, "unreasonable header");

    std::vector<std::pair<int, double>> entries;
    for (long k = 0; k < K; ++k) {
        if (!next_data_line(in, line, lineno))
            fail(name, lineno, "expected " + std::to_string(K) + " entries");
        auto toks = tokens(line);
        if (toks.size() != 2) fail(name, lineno, "entry must be 'index value'");
        long idx = parse_long(toks[0], name, lineno);
        double val = parse_double(toks[1], name, lineno);
        if (idx < 1 || idx > n) fail(name, lineno, "index out of range (1-based)");
        if (val == 0.0) fail(name, lineno, "zero value on support");
        entries.emplace_back(int(idx - 1), val);
    }
    std::sort(entries.begin(), entries.end());
    for (std::size_t k = 1; k < entries.size(); ++k)
        if (entries[k].first == entries[k - 1].first)
            fail(name, lineno, "duplicate support index");

    std::vector<int> support;
    std::vector<double> values;
    for (auto& [i, v] : entries) {
        support.push_back(i);
        values.push_back(v);
    }
    return SparseVector(int(n), std::move(support), std::move(values));
}

SparseVector read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_signal(in, path);
}

void write_signal_file(const std::string& path, const SparseVector& x) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    char buf[64];
    out << x.dim << " " << x.sparsity() << "\n";
    for (int k = 0; k < x.sparsity(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", x.values[std::size_t(k)]);
        out << (x.support[std::size_t(k)] + 1) << " " << buf << "\n";
    }
}

}
