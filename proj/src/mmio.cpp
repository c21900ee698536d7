#include "gave/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <sstream>
#include <vector>

#include "gave/error.hpp"

namespace gave {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    // Next line that is neither blank nor a comment; false at end of input.
    bool next_data(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '%') continue;
            return true;
        }
        return false;
    }

    bool next_raw(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError, source_ + ":" + std::to_string(line_no_) + ": " + what);
    }

    [[noreturn]] void fail_dims(const std::string& what) const {
        throw Error(ErrorKind::DimensionError, source_ + ":" + std::to_string(line_no_) + ": " + what);
    }

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_no_ = 0;
};

double parse_value(const std::string& tok, const LineReader& rd) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        rd.fail("cannot parse number '" + tok + "'");
    }
    if (used != tok.size()) rd.fail("trailing characters in number '" + tok + "'");
    if (!std::isfinite(v)) rd.fail("non-finite value '" + tok + "'");
    return v;
}

long long parse_index(const std::string& tok, const LineReader& rd) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        rd.fail("cannot parse integer '" + tok + "'");
    }
    if (used != tok.size()) rd.fail("trailing characters in integer '" + tok + "'");
    return v;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

}  // namespace

Matrix read_matrix_market(std::istream& in, const std::string& source) {
    LineReader rd(in, source);
    std::string line;
    if (!rd.next_raw(line)) rd.fail("empty input");
    const auto head = tokens(line);
    if (head.size() != 5 || lower(head[0]) != "%%matrixmarket") rd.fail("missing %%MatrixMarket banner");
    const std::string object = lower(head[1]), format = lower(head[2]), field = lower(head[3]),
                      symmetry = lower(head[4]);
    if (object != "matrix") rd.fail("unsupported object '" + head[1] + "'");
    if (format != "array" && format != "coordinate") rd.fail("unsupported format '" + head[2] + "'");
    if (field != "real" && field != "integer" && field != "double")
        rd.fail("unsupported field '" + head[3] + "' (only real matrices)");
    if (symmetry != "general") rd.fail("unsupported symmetry '" + head[4] + "' (only general)");

    if (!rd.next_data(line)) rd.fail("missing size line");
    const auto size = tokens(line);
    const bool coord = format == "coordinate";
    if (size.size() != (coord ? 3U : 2U)) rd.fail("malformed size line");
    const long long rows = parse_index(size[0], rd), cols = parse_index(size[1], rd);
    if (rows < 1 || cols < 1) rd.fail("matrix dimensions must be positive");
    const auto r = static_cast<std::size_t>(rows), c = static_cast<std::size_t>(cols);
    Matrix m(r, c);

    if (coord) {
        const long long nnz = parse_index(size[2], rd);
        if (nnz < 0) rd.fail("negative entry count");
        for (long long k = 0; k < nnz; ++k) {
            if (!rd.next_data(line)) rd.fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
            const auto t = tokens(line);
            if (t.size() != 3) rd.fail("coordinate entry needs 'row col value'");
            const long long i = parse_index(t[0], rd), j = parse_index(t[1], rd);
            const double v = parse_value(t[2], rd);
            if (i < 1 || j < 1 || i > rows || j > cols)
                rd.fail_dims("index (" + t[0] + ", " + t[1] + ") outside " + size[0] + " x " + size[1]);
            m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) += v;
        }
    } else {
        const std::size_t total = r * c;
        std::size_t k = 0;
        while (k < total) {
            if (!rd.next_data(line)) rd.fail("expected " + std::to_string(total) + " values, found " + std::to_string(k));
            for (const auto& t : tokens(line)) {
                if (k == total) rd.fail("too many values");
                m(k % r, k / r) = parse_value(t, rd);
                ++k;
            }
        }
    }
    if (rd.next_data(line)) rd.fail("unexpected data after the last entry");
    return m;
}

Matrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
    return read_matrix_market(in, path);
}

Vector load_matrix_market_vector(const std::string& path) {
    const Matrix m = load_matrix_market(path);
    if (m.cols() != 1) throw Error(ErrorKind::DimensionError, path + ": right-hand side must be an n x 1 matrix");
    return m.column(0);
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
    out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
}

void save_matrix_market(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, path + ": cannot write file");
    write_matrix_market(out, m);
}

void save_matrix_market(const std::string& path, const Vector& v) {
    Matrix m(v.size(), 1);
    m.set_column(0, v);
    save_matrix_market(path, m);
}

}  // namespace gave
