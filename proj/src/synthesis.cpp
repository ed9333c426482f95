#include "rtmf/synthesis.hpp"

#include "rtmf/error.hpp"
#include "rtmf/linalg.hpp"

namespace rtmf {

OmegaBlocks compute_omega(const UncertainLti& sys) {
    sys.validate();
    const std::size_t n = sys.n(), m = sys.m(), p = sys.p();
    if (p > m)
        fail(ErrorKind::infeasible,
             "model following needs p <= m (outputs must not exceed inputs); got p = " +
                 std::to_string(p) + ", m = " + std::to_string(m));

    const Matrix block = block2x2(sys.a, sys.b, sys.c, Matrix());
    OmegaBlocks out;
    if (p == m) {
        out.omega = inverse(block);
    } else {
        // Wide block matrix: minimum-norm right pseudo-inverse.
        const Matrix gram = block * block.transpose();
        out.omega = block.transpose() * inverse(gram);
    }
    out.o11 = out.omega.block(0, 0, n, n);
    out.o12 = out.omega.block(0, n, n, p);
    out.o21 = out.omega.block(n, 0, m, n);
    out.o22 = out.omega.block(n, n, m, p);
    return out;
}

SynthesisResult solve_gh(const UncertainLti& sys, const ReferenceModel& model) {
    sys.validate();
    model.validate();

    SynthesisResult result;
    result.feasibility = check_feasibility(sys, model);
    if (!result.feasibility.feasible())
        fail(ErrorKind::infeasible, "model-following synthesis infeasible: " +
                                        result.feasibility.summary());

    const OmegaBlocks om = compute_omega(sys);
    const std::size_t n = sys.n(), n_r = model.n_r();

    const Matrix system = Matrix::identity(n * n_r) - kron(om.o11, model.a_r.transpose());
    const Vector rhs = stack_rows(om.o12 * model.c_r);
    Vector phi;
    try {
        phi = solve(system, rhs);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::infeasible)
            fail(ErrorKind::infeasible,
                 std::string("Kronecker system for G is singular or ill-conditioned; the "
                             "plant/model pair admits no reliable G (") +
                     e.what() + ")");
        throw;
    }
    result.g = unstack_rows(phi, n, n_r);
    result.h = om.o21 * (result.g * model.a_r) + om.o22 * model.c_r;
    result.residual_dyn =
        (sys.a * result.g + sys.b * result.h - result.g * model.a_r).norm_inf();
    result.residual_out = (sys.c * result.g - model.c_r).norm_inf();
    return result;
}

}  // namespace rtmf
