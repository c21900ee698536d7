#include "gave/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gave/error.hpp"

namespace gave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& m, const char* what) {
    if (!m.square() || m.rows() == 0)
        throw Error(ErrorKind::DimensionError, std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

double rank_tolerance(const Matrix& m) noexcept {
    return static_cast<double>(m.rows()) * kEps * m.max_abs();
}

LuDecomposition::LuDecomposition(const Matrix& m) : n_(m.rows()), lu_(m), perm_(m.rows()) {
    require_square(m, "LU");
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double tol = rank_tolerance(m);

    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
            parity_ = -parity_;
        }
        if (best <= tol) {
            // Zero pivot. Elimination continues on the remaining columns.
            singular_ = true;
            continue;
        }
        const double pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double l = lu_(i, k) / pivot;
            lu_(i, k) = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= l * lu_(k, j);
        }
    }
}

DetSign LuDecomposition::det_sign() const noexcept {
    if (singular_) return {Sign::zero, 0.0};
    int s = parity_;
    double logmag = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
        const double p = lu_(k, k);
        if (p < 0) s = -s;
        logmag += std::log(std::abs(p));
    }
    return {s > 0 ? Sign::positive : Sign::negative, logmag};
}

Vector LuDecomposition::solve(const Vector& rhs) const {
    if (rhs.size() != n_) throw Error(ErrorKind::DimensionError, "LU solve: rhs length mismatch");
    if (singular_) throw Error(ErrorKind::SingularMatrix, "pivot below rank tolerance");
    Vector x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n_; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Matrix LuDecomposition::solve(const Matrix& rhs) const {
    if (rhs.rows() != n_) throw Error(ErrorKind::DimensionError, "LU solve: rhs row count mismatch");
    Matrix x(n_, rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) x.set_column(j, solve(rhs.column(j)));
    return x;
}

Vector lu_solve(const Matrix& m, const Vector& rhs) { return LuDecomposition(m).solve(rhs); }

DetSign det_sign(const Matrix& m) { return LuDecomposition(m).det_sign(); }

Svd svd(const Matrix& m, int max_sweeps) {
    require_square(m, "SVD");
    const std::size_t n = m.rows();
    Matrix u = m;
    Matrix v = Matrix::identity(n);

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += u(i, p) * u(i, p);
                    beta += u(i, q) * u(i, q);
                    gamma += u(i, p) * u(i, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) throw Error(ErrorKind::NoConvergence, "Jacobi SVD exceeded its sweep budget");

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += u(i, j) * u(i, j);
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

    Svd out{Matrix(n, n), Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        for (std::size_t i = 0; i < n; ++i) {
            out.u(i, k) = norms[j] > 0.0 ? u(i, j) / norms[j] : 0.0;
            out.v(i, k) = v(i, j);
        }
    }
    return out;
}

Vector singular_values(const Matrix& m) { return svd(m).sigma; }

double spectral_radius_nonneg(const Matrix& m, std::size_t max_iter) {
    require_square(m, "spectral radius");
    const std::size_t n = m.rows();
    for (double x : m.entries())
        if (x < 0.0) throw Error(ErrorKind::InvalidArgument, "spectral_radius_nonneg: negative entry");

    Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double prev = -1.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        Vector w = m * v;
        const double wn = norm_2(w);
        // For nonnegative m and strictly positive v, m*v = 0 only when m = 0.
        if (wn == 0.0) return 0.0;
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
        if (prev >= 0.0 && std::abs(rayleigh - prev) <= 1e-12 * std::max(std::abs(rayleigh), 1e-300))
            return rayleigh;
        prev = rayleigh;
        v = (1.0 / wn) * w;
    }
    throw Error(ErrorKind::NoConvergence, "power iteration did not settle");
}

double spectral_radius_general(const Matrix& m) {
    require_square(m, "spectral radius");
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(e, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::NoConvergence, "Hessenberg QR did not converge");
    double rho = 0.0;
    for (const auto& lambda : solver.eigenvalues()) rho = std::max(rho, std::abs(lambda));
    return rho;
}

double spectral_radius_nonneg_or_general(const Matrix& m) {
    try {
        return spectral_radius_nonneg(m);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoConvergence) throw;
        return spectral_radius_general(m);
    }
}

}  // namespace gave
