#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gave {

/// Dense real vector. Length is at least one.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t len, double fill = 0.0);
    Vector(std::initializer_list<double> values);
    explicit Vector(std::vector<double> values);

    std::size_t size() const noexcept { return data_.size(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> span() noexcept { return data_; }
    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> data_;
};

/// Dense real matrix stored row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> entries() const noexcept { return data_; }

    Vector column(std::size_t j) const;
    void set_column(std::size_t j, const Vector& v);

    double max_abs() const noexcept;
    bool all_finite() const noexcept;
    bool is_identity() const noexcept;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& x);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);

Matrix transpose(const Matrix& a);
Matrix abs(const Matrix& a);
Vector abs(const Vector& v);

/// a * diag(d): scales column j of `a` by d[j].
Matrix scale_columns(const Matrix& a, std::span<const double> d);

double norm_inf(const Vector& v) noexcept;
double norm_2(const Vector& v) noexcept;
double max_row_sum(const Matrix& a) noexcept;
double max_col_sum(const Matrix& a) noexcept;
double frobenius(const Matrix& a) noexcept;

bool all_finite(const Vector& v) noexcept;

}  // namespace gave
