#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qrmimo/matrix.hpp"
#include "qrmimo/schedule.hpp"

namespace qrmimo {

inline constexpr const char* kToolVersion = "qrmimo 0.1.0";

// Matrix text format: first line "rows cols", then one line per row with
// cols "re:im" tokens separated by single spaces. Values are serialized
// with 17 significant digits, which round-trips doubles bit-exactly.
void write_matrix_text(std::ostream& os, const ComplexMatrix& m);
ComplexMatrix read_matrix_text(std::istream& is);

void write_matrix_file(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::string& path);

// Vectors travel as single-column matrices.
ComplexMatrix to_column_matrix(std::span<const Complex> v);
std::vector<Complex> column_vector(const ComplexMatrix& m);  // requires cols == 1

// 17-significant-digit decimal form of a double.
std::string fmt17(double x);

// Flat key-value configuration: "key = value" lines, '#' starts a comment,
// blank lines ignored.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

// Pipe trace CSV: columns cycle,pipe,task_i,task_j with 1-based element
// indices; free slots are written as idle,idle.
void write_pipe_trace_csv(std::ostream& os, const PipeTrace& trace);

}  // namespace qrmimo
