#include "rtmf/matrix.hpp"

#include <cmath>
#include <string>

#include "rtmf/error.hpp"

namespace rtmf {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::validation, msg);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        require(row.size() == cols_, "matrix initializer has ragged rows");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    ensure_finite("matrix construction");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double& Matrix::operator()(std::size_t i, std::size_t j) {
    require(i < rows_ && j < cols_, "matrix index out of range");
    return data_[i * cols_ + j];
}

double Matrix::operator()(std::size_t i, std::size_t j) const {
    require(i < rows_ && j < cols_, "matrix index out of range");
    return data_[i * cols_ + j];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = data_[i * cols_ + j];
    return t;
}

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    require(i0 + r <= rows_ && j0 + c <= cols_, "matrix block out of range");
    Matrix b(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) b(i, j) = data_[(i0 + i) * cols_ + j0 + j];
    return b;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
    require(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_, "matrix block out of range");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) data_[(i0 + i) * cols_ + j0 + j] = m(i, j);
}

Vector Matrix::row_vector(std::size_t i) const {
    require(i < rows_, "matrix row out of range");
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = data_[i * cols_ + j];
    return v;
}

Vector Matrix::col_vector(std::size_t j) const {
    require(j < cols_, "matrix column out of range");
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
    return v;
}

double Matrix::norm_inf() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

void Matrix::ensure_finite(const char* context) const {
    for (double x : data_)
        if (!std::isfinite(x))
            fail(ErrorKind::numeric, std::string("non-finite value in ") + context);
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix addition dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    ensure_finite("matrix addition");
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix subtraction dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    ensure_finite("matrix subtraction");
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    ensure_finite("matrix scaling");
    return *this;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    c.ensure_finite("matrix product");
    return c;
}

Matrix operator*(double s, Matrix m) { return m *= s; }
Matrix operator*(Matrix m, double s) { return m *= s; }

Vector::Vector(std::size_t n) : data_(n, 0.0) {}

Vector::Vector(std::initializer_list<double> init) : data_(init) {
    ensure_finite("vector construction");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
    ensure_finite("vector construction");
}

double& Vector::operator[](std::size_t i) {
    require(i < data_.size(), "vector index out of range");
    return data_[i];
}

double Vector::operator[](std::size_t i) const {
    require(i < data_.size(), "vector index out of range");
    return data_[i];
}

double Vector::norm_inf() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

void Vector::ensure_finite(const char* context) const {
    for (double x : data_)
        if (!std::isfinite(x))
            fail(ErrorKind::numeric, std::string("non-finite value in ") + context);
}

Vector& Vector::operator+=(const Vector& rhs) {
    require(size() == rhs.size(), "vector addition dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    ensure_finite("vector addition");
    return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
    require(size() == rhs.size(), "vector subtraction dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    ensure_finite("vector subtraction");
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& x : data_) x *= s;
    ensure_finite("vector scaling");
    return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector v) { return v *= s; }

Vector operator*(const Matrix& m, const Vector& v) {
    require(m.cols() == v.size(), "matrix-vector product dimension mismatch");
    Vector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        r[i] = acc;
    }
    r.ensure_finite("matrix-vector product");
    return r;
}

double dot(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "dot product dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Matrix column_matrix(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix row_matrix(const Vector& v) {
    Matrix m(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
    return m;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    const std::size_t top = !a.empty() ? a.rows() : b.rows();
    const std::size_t bottom = !c.empty() ? c.rows() : d.rows();
    const std::size_t left = !a.empty() ? a.cols() : c.cols();
    const std::size_t right = !b.empty() ? b.cols() : d.cols();
    require(top + bottom > 0 && left + right > 0, "block2x2 cannot infer dimensions");
    require(a.empty() || (a.rows() == top && a.cols() == left), "block2x2: A dimensions inconsistent");
    require(b.empty() || (b.rows() == top && b.cols() == right), "block2x2: B dimensions inconsistent");
    require(c.empty() || (c.rows() == bottom && c.cols() == left), "block2x2: C dimensions inconsistent");
    require(d.empty() || (d.rows() == bottom && d.cols() == right), "block2x2: D dimensions inconsistent");
    Matrix m(top + bottom, left + right);
    if (!a.empty()) m.set_block(0, 0, a);
    if (!b.empty()) m.set_block(0, left, b);
    if (!c.empty()) m.set_block(top, 0, c);
    if (!d.empty()) m.set_block(top, left, d);
    return m;
}

}  // namespace rtmf
