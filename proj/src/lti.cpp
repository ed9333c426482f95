#include "rtmf/lti.hpp"

#include <string>

#include "rtmf/error.hpp"
#include "rtmf/linalg.hpp"

namespace rtmf {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::validation, msg);
}

}  // namespace

void UncertainLti::validate() const {
    require(!a.empty() && a.rows() == a.cols(), "plant: A must be square and nonempty");
    require(b.rows() == a.rows() && b.cols() >= 1, "plant: B must be n x m with m >= 1");
    require(c.cols() == a.rows() && c.rows() >= 1, "plant: C must be p x n with p >= 1");
    a.ensure_finite("plant A");
    b.ensure_finite("plant B");
    c.ensure_finite("plant C");
    require(theta_m >= 0.0 && theta_dot_m >= 0.0, "plant: disturbance bounds must be >= 0");
    require(is_controllable(a, b), "plant: (A, B) must be controllable");
}

void ReferenceModel::validate() const {
    require(!a_r.empty() && a_r.rows() == a_r.cols(), "model: A_r must be square and nonempty");
    require(b_r.rows() == a_r.rows() && b_r.cols() == 1, "model: B_r must be n_r x 1");
    require(c_r.cols() == a_r.rows() && c_r.rows() >= 1, "model: C_r must be p x n_r");
    require(x_r0.size() == a_r.rows(), "model: x_r0 must have n_r entries");
    a_r.ensure_finite("model A_r");
    b_r.ensure_finite("model B_r");
    c_r.ensure_finite("model C_r");
    x_r0.ensure_finite("model x_r0");
    for (double re : eig_real_parts(a_r))
        require(re < 0.0, "model: A_r must be Hurwitz (all eigenvalue real parts < 0)");
}

std::string FeasibilityReport::summary() const {
    std::string s = "rank " + std::to_string(rank) + " of required " +
                    std::to_string(required_rank) + " (n+p): " + (rank_ok ? "ok" : "deficient") +
                    "; outputs <= inputs (p <= m): " + (outputs_le_inputs ? "yes" : "no") +
                    " -> " + (feasible() ? "feasible" : "infeasible");
    return s;
}

FeasibilityReport check_feasibility(const UncertainLti& sys, const ReferenceModel& model) {
    require(model.c_r.rows() == sys.p(), "model output count must match plant output count");
    const Matrix block = block2x2(sys.a, sys.b, sys.c, Matrix());
    FeasibilityReport report;
    report.required_rank = sys.n() + sys.p();
    report.rank = rank(block);
    report.rank_ok = report.rank == report.required_rank;
    report.outputs_le_inputs = sys.p() <= sys.m();
    return report;
}

}  // namespace rtmf
