#pragma once

#include <cstddef>
#include <vector>

#include "rtmf/matrix.hpp"

namespace rtmf {

struct SolveOptions {
    double cond_limit = 1e12;  // reject systems whose condition estimate exceeds this
};

// Complete-pivoting LU factorization shared by solve/inverse/condition
// checks. Complete pivoting costs extra comparisons but keeps elimination
// exact on the clean rational benchmark data, which the synthesis oracle
// values depend on.
class LuDecomposition {
public:
    explicit LuDecomposition(const Matrix& a);

    bool singular() const noexcept { return singular_; }
    std::size_t order() const noexcept { return n_; }

    // Raw substitution without refinement; callers wanting the residual
    // contract go through rtmf::solve.
    Vector substitute(const Vector& b) const;

    // Induced infinity-norm condition estimate |A| * |A^-1| (exact inverse
    // norm via n substitutions; fine at the sizes this toolkit targets).
    double cond_inf() const;

private:
    std::size_t n_ = 0;
    Matrix lu_;
    std::vector<std::size_t> row_perm_;
    std::vector<std::size_t> col_perm_;
    bool singular_ = false;
    double row_sum_norm_ = 0.0;
    mutable double cond_cache_ = -1.0;
};

// Solve A x = b by complete-pivot LU with iterative refinement. Refinement
// steps are applied only while they shrink the residual and exceed working
// accuracy, so exactly representable solutions are returned bit-exact.
// Enforces the residual contract |A x - b|_inf <= 1e-9 (1 + |b|_inf) and the
// condition gate; singular or over-conditioned systems raise an error instead
// of returning junk.
Vector solve(const Matrix& a, const Vector& b, const SolveOptions& opts = {});
Matrix solve(const Matrix& a, const Matrix& b, const SolveOptions& opts = {});
Matrix inverse(const Matrix& a, const SolveOptions& opts = {});

double cond_inf_estimate(const Matrix& a);

// Kronecker product: block (i,j) of the result is a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

// Row-stacking operator: rows of m transposed and concatenated, first row
// first. unstack_rows is its inverse.
Vector stack_rows(const Matrix& m);
Matrix unstack_rows(const Vector& v, std::size_t rows, std::size_t cols);

// Real parts of the eigenvalues, sorted descending. Closed form up to n = 3
// (characteristic polynomial), Hessenberg QR iteration with Francis double
// shifts above; non-convergence raises an error.
std::vector<double> eig_real_parts(const Matrix& a);

// Numerical rank via full-pivoting elimination. Default tolerance scales with
// the largest entry; pass tol > 0 to override.
std::size_t rank(const Matrix& m, double tol = -1.0);

Matrix controllability_matrix(const Matrix& a, const Matrix& b);
bool is_controllable(const Matrix& a, const Matrix& b);

}  // namespace rtmf
