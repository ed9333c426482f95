#pragma once

// Deterministic random generators for property tests. Every test seeds its
// own engine so failures reproduce exactly.

#include <cmath>
#include <random>

#include "rtmf/linalg.hpp"
#include "rtmf/matrix.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline rtmf::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                  double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    rtmf::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

inline rtmf::Vector random_vector(Rng& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    rtmf::Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

// Random orthogonal matrix as a product of Householder reflectors.
inline rtmf::Matrix random_orthogonal(Rng& rng, std::size_t n) {
    rtmf::Matrix q = rtmf::Matrix::identity(n);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (std::size_t rep = 0; rep < n; ++rep) {
        rtmf::Vector v(n);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = dist(rng);
            norm2 += v[i] * v[i];
        }
        if (norm2 < 1e-12) continue;
        const double beta = 2.0 / norm2;
        rtmf::Matrix refl = rtmf::Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) refl(i, j) -= beta * v[i] * v[j];
        q = refl * q;
    }
    return q;
}

// Well-conditioned square matrix: Q1 * D * Q2 with singular values in [1, 2].
inline rtmf::Matrix random_well_conditioned(Rng& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(1.0, 2.0);
    rtmf::Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = dist(rng);
    return random_orthogonal(rng, n) * d * random_orthogonal(rng, n);
}

// Matrix with prescribed real eigenvalues via orthogonal similarity.
inline rtmf::Matrix matrix_with_eigs(Rng& rng, const std::vector<double>& eigs) {
    const std::size_t n = eigs.size();
    rtmf::Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = eigs[i];
    const rtmf::Matrix q = random_orthogonal(rng, n);
    return q * d * q.transpose();
}

inline double trace(const rtmf::Matrix& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

}  // namespace testgen
