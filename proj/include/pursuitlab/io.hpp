#pragma once

#include <iosfwd>
#include <string>

#include "pursuitlab/matrix.hpp"
#include "pursuitlab/sparse.hpp"

namespace pursuitlab {

// Matrix file: first data line "m n", then m lines of n floats, whitespace
// separated. Lines whose first non-blank character is '#' are comments.
Matrix read_matrix_file(const std::string& path);
Matrix read_matrix(std::istream& in, const std::string& name);
void write_matrix_file(const std::string& path, const Matrix& A);

// Signal file: first data line "n K", then K lines "index value" with
// 1-based indices. Same '#' comment rule.
SparseVector read_signal_file(const std::string& path);
SparseVector read_signal(std::istream& in, const std::string& name);
void write_signal_file(const std::string& path, const SparseVector& x);

}
