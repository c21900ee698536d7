#pragma once

// Independent reference computations for the unit tests. None of these
// touch the library's LU, SVD or power iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gave/matrix.hpp"
#include "gave/rng.hpp"

namespace oracle {

inline double cofactor_det(const gave::Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        gave::Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
    }
    return det;
}

/// Characteristic polynomial coefficients c_0..c_n of det(lambda I - m),
/// monic (c_n = 1), by the Faddeev-LeVerrier recursion.
inline std::vector<long double> char_poly(const gave::Matrix& m) {
    const std::size_t n = m.rows();
    using Mat = std::vector<std::vector<long double>>;
    Mat a(n, std::vector<long double>(n)), mk(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    std::vector<long double> c(n + 1, 0.0L);
    c[n] = 1.0L;
    for (std::size_t k = 1; k <= n; ++k) {
        Mat next(n, std::vector<long double>(n, 0.0L));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long double s = 0.0L;
                for (std::size_t t = 0; t < n; ++t) s += a[i][t] * mk[t][j];
                next[i][j] = s + (i == j ? c[n - k + 1] : 0.0L);
            }
        long double tr = 0.0L;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr += a[i][t] * next[t][i];
        c[n - k] = -tr / static_cast<long double>(k);
        mk = std::move(next);
    }
    return c;
}

/// Roots of a monic polynomial by Durand-Kerner.
inline std::vector<std::complex<long double>> poly_roots(const std::vector<long double>& c) {
    const std::size_t n = c.size() - 1;
    using C = std::complex<long double>;
    std::vector<C> z(n);
    long double bound = 1.0L;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, 1.0L + std::abs(c[i]));
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(C(0.4L, 0.9L), static_cast<int>(i)) * (bound * 0.5L);
    const auto eval = [&](C x) {
        C r = c[n];
        for (std::size_t i = n; i-- > 0;) r = r * x + c[i];
        return r;
    };
    for (int it = 0; it < 5000; ++it) {
        long double change = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            C den = 1.0L;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const C step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

inline double largest_root_modulus(const gave::Matrix& m) {
    long double r = 0.0L;
    for (const auto& z : poly_roots(char_poly(m))) r = std::max(r, std::abs(z));
    return static_cast<double>(r);
}

/// Singular values as square roots of the eigenvalues of m^T m, descending.
inline std::vector<double> singular_values(const gave::Matrix& m) {
    const gave::Matrix g = gave::transpose(m) * m;
    std::vector<double> out;
    for (const auto& z : poly_roots(char_poly(g))) out.push_back(std::sqrt(std::max(0.0L, z.real())));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Bias-free Gelfand estimate (||m^128||_F / ||m^64||_F)^(1/64) with
/// rescaling between squarings.
inline double gelfand_ratio(const gave::Matrix& m) {
    gave::Matrix p = m;
    double log_scale = 0.0;  // log of the factor divided out of p
    auto normalize = [&] {
        const double f = gave::frobenius(p);
        if (f == 0.0) return;
        p = (1.0 / f) * p;
        log_scale += std::log(f);
    };
    for (int k = 0; k < 6; ++k) {  // p ~ m^64
        p = p * p;
        log_scale *= 2.0;
        normalize();
    }
    const double log64 = log_scale + std::log(gave::frobenius(p));
    gave::Matrix q = p * p;
    const double log128 = 2.0 * log_scale + std::log(gave::frobenius(q));
    return std::exp((log128 - log64) / 64.0);
}

/// A x + B|x| - b recomputed entry by entry.
inline double residual(const gave::Matrix& a, const gave::Matrix& b, const gave::Vector& rhs,
                       const gave::Vector& x) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        long double s = -static_cast<long double>(rhs[i]);
        for (std::size_t j = 0; j < a.cols(); ++j) s += static_cast<long double>(a(i, j)) * x[j] + b(i, j) * std::fabs(x[j]);
        r = std::max(r, static_cast<double>(std::fabs(s)));
    }
    return r;
}

inline gave::Matrix normal_matrix(std::size_t n, std::uint64_t seed) {
    const gave::CounterRng rng(seed);
    gave::Matrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = rng.normal(i);
    return m;
}

inline gave::Vector normal_vector(std::size_t n, std::uint64_t seed) {
    const gave::CounterRng rng(seed);
    gave::Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal(i);
    return v;
}

}  // namespace oracle
