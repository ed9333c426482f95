#pragma once

#include <cstddef>
#include <vector>

#include "rtmf/lti.hpp"
#include "rtmf/matrix.hpp"

namespace rtmf {

// Change of coordinates z -> (eta, xi) = T1 z that moves the whole input
// matrix into the last m rows: T1 B = [0; I_m]. T1 is built from the blocks
// of B (after an optional row permutation making the bottom m x m block
// invertible) and is generally not orthogonal.
struct RegularForm {
    Matrix t1, t1_inv;
    Matrix a11, a12, a21, a22;  // blocks of T1 A T1^-1
    Matrix b2;                  // bottom block of the (permuted) B
    std::vector<std::size_t> row_perm;  // state order fed into the T1 blocks

    std::size_t n() const noexcept { return t1.rows(); }
    std::size_t m() const noexcept { return b2.rows(); }
};

RegularForm to_regular_form(const Matrix& a, const Matrix& b);
RegularForm to_regular_form(const UncertainLti& sys);

// Sliding surface sigma = -K eta + xi and the block labels of the closed-loop
// matrix T2 (T1 A T1^-1) T2^-1 with T2 = [[I, 0], [-K, I]]:
//   reduced_a = A11 + A12 K   (surface dynamics, must be Hurwitz)
//   script_a  = A21 + A22 K - K (A11 + A12 K)
//   a22_eff   = A22 - K A12
struct SurfaceDesign {
    Matrix k;          // m x (n-m)
    Matrix t2, t2_inv;  // n x n
    Matrix script_a;    // m x (n-m)
    Matrix a22_eff;     // m x m
    Matrix reduced_a;   // (n-m) x (n-m)
};

// Places the eigenvalues of A11 + A12 K at the requested strictly negative
// reals. Single-input pairs use Ackermann's formula; wider inputs reduce to a
// single column through a deterministic dyad search. The achieved spectrum is
// verified to 1e-6 before returning.
SurfaceDesign design_k(const RegularForm& rf, const std::vector<double>& desired_poles);

// Default surface poles: all at -1 (matches the benchmark design).
std::vector<double> default_surface_poles(std::size_t count);

Vector sigma(const SurfaceDesign& design, const Vector& eta, const Vector& xi);

}  // namespace rtmf
