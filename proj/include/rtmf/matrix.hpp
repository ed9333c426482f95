#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rtmf {

class Vector;

// Dense row-major matrix of doubles, sized for control problems of a few
// dozen states. Dimension mismatches and non-finite entries raise
// rtmf::Error; NaN/Inf never propagate silently through arithmetic.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-filled
    Matrix(std::initializer_list<std::initializer_list<double>> init);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j);
    double operator()(std::size_t i, std::size_t j) const;

    Matrix transpose() const;
    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const;
    void set_block(std::size_t i0, std::size_t j0, const Matrix& m);
    Vector row_vector(std::size_t i) const;
    Vector col_vector(std::size_t j) const;

    // Largest absolute entry; the residual-norm convention used throughout.
    double norm_inf() const;

    void ensure_finite(const char* context) const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix m);
Matrix operator*(Matrix m, double s);

// Column vector companion to Matrix.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n);  // zero-filled
    Vector(std::initializer_list<double> init);
    explicit Vector(std::vector<double> values);

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i);
    double operator[](std::size_t i) const;

    double norm_inf() const;
    void ensure_finite(const char* context) const;

    Vector& operator+=(const Vector& rhs);
    Vector& operator-=(const Vector& rhs);
    Vector& operator*=(double s);

    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Vector& a, const Vector& b) { return a.data_ == b.data_; }
    friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

private:
    std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector v);
Vector operator*(const Matrix& m, const Vector& v);
double dot(const Vector& a, const Vector& b);

Matrix column_matrix(const Vector& v);
Matrix row_matrix(const Vector& v);

// [[A, B], [C, D]] assembly. An empty argument stands for a zero block whose
// dimensions are inferred from its neighbors.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

}  // namespace rtmf
