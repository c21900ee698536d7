#pragma once

#include <iosfwd>
#include <string>

#include "gave/matrix.hpp"

namespace gave {

/// Reads "matrix array real general" (column-major values) and
/// "matrix coordinate real general" (1-indexed, duplicates summed, missing
/// entries zero). Integer fields are accepted as real. Malformed input
/// throws ParseError naming the line; out-of-range coordinates throw
/// DimensionError.
Matrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
Matrix load_matrix_market(const std::string& path);

/// An n x 1 matrix as a vector.
Vector load_matrix_market_vector(const std::string& path);

/// Writes "array real general" with 17 significant digits.
void write_matrix_market(std::ostream& out, const Matrix& m);
void save_matrix_market(const std::string& path, const Matrix& m);
void save_matrix_market(const std::string& path, const Vector& v);

}  // namespace gave
