#include "qrmimo/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qrmimo {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_matrix_text(std::ostream& os, const ComplexMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            const Complex& z = m(i, j);
            os << fmt17(z.real()) << ':' << fmt17(z.imag());
        }
        os << '\n';
    }
}

namespace {

double parse_real(const std::string& tok, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("matrix: bad ") + what + " value '" + tok + "'");
    }
    if (used != tok.size())
        throw ParseError(std::string("matrix: trailing characters in ") + what + " value '" +
                         tok + "'");
    if (!std::isfinite(v))
        throw ParseError(std::string("matrix: non-finite ") + what + " value '" + tok + "'");
    return v;
}

}  // namespace

ComplexMatrix read_matrix_text(std::istream& is) {
    long long rows = 0;
    long long cols = 0;
    if (!(is >> rows >> cols))
        throw ParseError("matrix: missing 'rows cols' header");
    if (rows < 1 || cols < 1)
        throw ParseError("matrix: dimensions must be positive");
    ComplexMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::string tok;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!(is >> tok))
                throw ParseError("matrix: fewer entries than the header promises");
            const std::size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw ParseError("matrix: entry '" + tok + "' is not re:im");
            m(i, j) = Complex(parse_real(tok.substr(0, colon), "real"),
                              parse_real(tok.substr(colon + 1), "imaginary"));
        }
    }
    if (is >> tok)
        throw ParseError("matrix: trailing data after the last entry");
    return m;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream os(path);
    if (!os)
        throw ParseError("cannot open '" + path + "' for writing");
    write_matrix_text(os, m);
    if (!os)
        throw ParseError("failed while writing '" + path + "'");
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ParseError("cannot open '" + path + "'");
    return read_matrix_text(is);
}

ComplexMatrix to_column_matrix(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

std::vector<Complex> column_vector(const ComplexMatrix& m) {
    if (m.cols() != 1)
        throw DimensionError("column_vector: expected a single-column matrix");
    std::vector<Complex> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
    return v;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ParseError("cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

void write_pipe_trace_csv(std::ostream& os, const PipeTrace& trace) {
    os << "cycle,pipe,task_i,task_j\n";
    for (std::size_t c = 0; c < trace.cycles.size(); ++c) {
        for (const auto& slot : trace.cycles[c]) {
            os << c << ',' << slot.pipe << ',';
            if (slot.task)
                os << slot.task->target_row + 1 << ',' << slot.task->target_col + 1;
            else
                os << "idle,idle";
            os << '\n';
        }
    }
}

}  // namespace qrmimo
