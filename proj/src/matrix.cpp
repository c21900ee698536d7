#include "gave/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gave/error.hpp"

namespace gave {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::SingularSum: return "SingularSum";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::RangeViolation: return "RangeViolation";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::InconsistencyDetected: return "InconsistencyDetected";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DimensionError: return "DimensionError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

void require_dims(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::DimensionError, what);
}

}  // namespace

Vector::Vector(std::size_t len, double fill) : data_(len, fill) {}

Vector::Vector(std::initializer_list<double> values) : data_(values) {}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    require_dims(data_.size() == rows * cols, "matrix entry count does not match rows*cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require_dims(r.size() == cols_, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
    require_dims(v.size() == rows_, "column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

bool Matrix::is_identity() const noexcept {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_dims(a.cols() == b.rows(), "matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (double& x : c.row(i)) x *= s;
    return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
    require_dims(a.cols() == x.size(), "matrix-vector shape mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        const auto r = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector operator+(const Vector& a, const Vector& b) {
    require_dims(a.size() == b.size(), "vector sum length mismatch");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Vector operator-(const Vector& a, const Vector& b) {
    require_dims(a.size() == b.size(), "vector difference length mismatch");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Vector operator*(double s, const Vector& v) {
    Vector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = s * v[i];
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix abs(const Matrix& a) {
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (double& x : c.row(i)) x = std::abs(x);
    return c;
}

Vector abs(const Vector& v) {
    Vector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = std::abs(v[i]);
    return c;
}

Matrix scale_columns(const Matrix& a, std::span<const double> d) {
    require_dims(a.cols() == d.size(), "column scaling length mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = c.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) r[j] *= d[j];
    }
    return c;
}

double norm_inf(const Vector& v) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

double norm_2(const Vector& v) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

double max_row_sum(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double x : a.row(i)) s += std::abs(x);
        m = std::max(m, s);
    }
    return m;
}

double max_col_sum(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

double frobenius(const Matrix& a) noexcept {
    double s = 0.0;
    for (double x : a.entries()) s += x * x;
    return std::sqrt(s);
}

bool all_finite(const Vector& v) noexcept {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i])) return false;
    return true;
}

}  // namespace gave
