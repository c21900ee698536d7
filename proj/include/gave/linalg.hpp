#pragma once

#include <cstddef>
#include <vector>

#include "gave/matrix.hpp"

namespace gave {

/// Pivots at or below n * eps * max|entry| are treated as exact zeros.
double rank_tolerance(const Matrix& m) noexcept;

enum class Sign { negative = -1, zero = 0, positive = 1 };

struct DetSign {
    Sign sign = Sign::zero;
    double log_magnitude = 0.0;  // sum of log|pivot|, only meaningful when sign != zero

    int as_int() const noexcept { return static_cast<int>(sign); }
    bool nonzero() const noexcept { return sign != Sign::zero; }
};

/// Row-partial-pivoted LU of a square matrix. Construction never throws on
/// singular input; `singular()` reports whether a pivot fell below the rank
/// tolerance and `solve` throws SingularMatrix in that case.
class LuDecomposition {
public:
    explicit LuDecomposition(const Matrix& m);

    std::size_t size() const noexcept { return n_; }
    bool singular() const noexcept { return singular_; }
    DetSign det_sign() const noexcept;

    Vector solve(const Vector& rhs) const;
    Matrix solve(const Matrix& rhs) const;

private:
    std::size_t n_;
    Matrix lu_;
    std::vector<std::size_t> perm_;
    int parity_ = 1;
    bool singular_ = false;
};

Vector lu_solve(const Matrix& m, const Vector& rhs);
DetSign det_sign(const Matrix& m);

struct Svd {
    Matrix u;      // left singular vectors as columns
    Vector sigma;  // descending, non-negative
    Matrix v;      // right singular vectors as columns
};

/// One-sided (Hestenes) Jacobi SVD of a square matrix. Throws NoConvergence
/// when the sweep budget is exhausted.
Svd svd(const Matrix& m, int max_sweeps = 80);
Vector singular_values(const Matrix& m);

/// Perron root of an entrywise nonnegative matrix by power iteration.
/// Throws NoConvergence after `max_iter` steps.
double spectral_radius_nonneg(const Matrix& m, std::size_t max_iter = 20000);

/// Largest eigenvalue modulus of an arbitrary real square matrix.
double spectral_radius_general(const Matrix& m);

/// Nonnegative-matrix Perron root, falling back to the general routine when
/// power iteration does not settle (imprimitive matrices).
double spectral_radius_nonneg_or_general(const Matrix& m);

}  // namespace gave
