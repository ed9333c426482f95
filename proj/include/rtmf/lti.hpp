#pragma once

#include <cstddef>
#include <string>

#include "rtmf/matrix.hpp"

namespace rtmf {

// Uncertain LTI plant xdot = A x + B (u + w) with |w| <= theta_m and
// |dw/dt| <= theta_dot_m on the matched channel.
struct UncertainLti {
    Matrix a;  // n x n
    Matrix b;  // n x m
    Matrix c;  // p x n
    double theta_m = 0.0;
    double theta_dot_m = 0.0;

    std::size_t n() const noexcept { return a.rows(); }
    std::size_t m() const noexcept { return b.cols(); }
    std::size_t p() const noexcept { return c.rows(); }

    // Dimension, finiteness, bound and controllability checks.
    void validate() const;
};

// Stable reference model xdot_r = A_r x_r + B_r r, y_r = C_r x_r.
struct ReferenceModel {
    Matrix a_r;  // n_r x n_r
    Matrix b_r;  // n_r x 1 command input
    Matrix c_r;  // p x n_r
    Vector x_r0;

    std::size_t n_r() const noexcept { return a_r.rows(); }

    // Dimension checks plus the Hurwitz requirement on A_r.
    void validate() const;
};

struct FeasibilityReport {
    std::size_t rank = 0;
    std::size_t required_rank = 0;  // n + p
    bool rank_ok = false;
    bool outputs_le_inputs = false;  // p <= m

    bool feasible() const noexcept { return rank_ok && outputs_le_inputs; }
    std::string summary() const;
};

// Solvability of the model-following equations: the (n+p) x (n+m) block
// matrix [[A, B], [C, 0]] must have rank n + p, which also needs p <= m.
FeasibilityReport check_feasibility(const UncertainLti& sys, const ReferenceModel& model);

}  // namespace rtmf
