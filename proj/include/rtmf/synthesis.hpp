#pragma once

#include "rtmf/lti.hpp"
#include "rtmf/matrix.hpp"

namespace rtmf {

// Partition of Omega, the (pseudo-)inverse of [[A, B], [C, 0]]:
// [[o11 (n x n), o12 (n x p)], [o21 (m x n), o22 (m x p)]].
struct OmegaBlocks {
    Matrix omega;
    Matrix o11, o12, o21, o22;
};

// p = m: plain inverse. p < m: minimum-norm right pseudo-inverse
// P^T (P P^T)^-1, which reduces to the inverse for square P. p > m is
// rejected (model following needs at least as many inputs as outputs).
OmegaBlocks compute_omega(const UncertainLti& sys);

struct SynthesisResult {
    Matrix g;  // n x n_r
    Matrix h;  // m x n_r
    double residual_dyn = 0.0;  // |A G + B H - G A_r| (max-entry norm)
    double residual_out = 0.0;  // |C G - C_r|
    FeasibilityReport feasibility;
};

// Model-following gains: solves the fixed-point equation
// G = o11 G A_r + o12 C_r through its row-stacked Kronecker form
// [I - kron(o11, A_r^T)] stack(G) = stack(o12 C_r), then
// H = o21 G A_r + o22 C_r. Fails loudly on infeasible rank or a singular
// Kronecker system.
SynthesisResult solve_gh(const UncertainLti& sys, const ReferenceModel& model);

}  // namespace rtmf
