#pragma once

// Exponential sweeps behind the exact certificates. Each has an OpenMP
// kernel and a plain serial reference; both must return identical results
// for any thread count.

#include <cstdint>
#include <optional>
#include <vector>

#include "gave/linalg.hpp"
#include "gave/matrix.hpp"

namespace gave {

/// A + B * diag(s) for the sign vector encoded by `mask`.
Matrix vertex_matrix(const Matrix& a, const Matrix& b, std::uint64_t mask);

/// Principal submatrix on the index set encoded by `mask`.
Matrix principal_submatrix(const Matrix& m, std::uint64_t mask);

struct VertexSweep {
    Sign reference = Sign::zero;             // determinant sign at Gray rank 0
    std::optional<std::uint64_t> first_bad;  // Gray rank of first zero/flipped vertex
    DetSign bad_det;
    DetSign prev_det;                        // vertex at first_bad - 1
    double min_log = 0.0;                    // over vertices before first_bad
    double max_log = 0.0;
    std::uint64_t evaluated = 0;             // sequential-equivalent count
};

struct MinorSweep {
    std::optional<std::uint64_t> first_bad_mask;  // lexicographically first nonpositive minor
    DetSign bad_det;
    double min_log = 0.0;                         // over minors before the witness
    std::uint64_t evaluated = 0;                  // lexicographic rank of witness + 1, or 2^n - 1
};

VertexSweep vertex_sweep(const Matrix& a, const Matrix& b);
MinorSweep minor_sweep(const Matrix& m);

/// Index masks of all nonempty subsets of {0..n-1} in lexicographic order
/// of their sorted index sequences ({0}, {0,1}, {0,1,2}, ..., {0,2}, ...).
std::vector<std::uint64_t> lexicographic_subsets(std::size_t n);

namespace serial {

VertexSweep vertex_sweep(const Matrix& a, const Matrix& b);
MinorSweep minor_sweep(const Matrix& m);

}  // namespace serial

}  // namespace gave
