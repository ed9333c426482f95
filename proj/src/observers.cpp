#include "rtmf/observers.hpp"

#include <cmath>

#include "rtmf/error.hpp"
#include "rtmf/maglev.hpp"
#include "rtmf/sta.hpp"

namespace rtmf {

namespace {

void check_step_args(double y_meas, double u, double dt) {
    if (!(dt > 0.0)) fail(ErrorKind::validation, "observer step needs dt > 0");
    if (!std::isfinite(y_meas) || !std::isfinite(u)) {
        fail(ErrorKind::validation, "observer step needs finite measurement and input");
    }
}

}  // namespace

StoState sto_step(const StoState& st, double y_meas, double u, double dt) {
    check_step_args(y_meas, u, dt);
    if (!(st.k1 > 0.0) || !(st.k2 > 0.0)) {
        fail(ErrorKind::validation, "STO gains must be positive");
    }
    const double e1 = y_meas - st.xhat1;
    StoState next = st;
    next.xhat1 = st.xhat1 + dt * (st.xhat2 + st.k1 * std::sqrt(std::abs(e1)) * sign0(e1));
    next.xhat2 = st.xhat2 + dt * (st.k2 * sign0(e1) - maglev::kInputGain * u +
                                  maglev::kStiffness * st.xhat1);
    return next;
}

HosmoState hosmo_step(const HosmoState& st, double y_meas, double u, double dt) {
    check_step_args(y_meas, u, dt);
    if (!(st.l1 > 0.0) || !(st.l2 > 0.0) || !(st.l3 > 0.0)) {
        fail(ErrorKind::validation, "HOSMO gains must be positive");
    }
    const double e1 = y_meas - st.xhat1;
    HosmoState next = st;
    next.xhat1 = st.xhat1 + dt * (st.xhat2 + st.l1 * std::cbrt(e1 * e1) * sign0(e1));
    next.xhat2 = st.xhat2 + dt * (st.l2 * std::cbrt(std::abs(e1)) * sign0(e1) +
                                  maglev::kStiffness * st.xhat1 - maglev::kInputGain * u +
                                  st.xhat3);
    next.xhat3 = st.xhat3 + dt * st.l3 * sign0(e1);
    return next;
}

std::pair<double, double> recommend_sto_gains(double theta_m) {
    if (!(theta_m > 0.0)) {
        fail(ErrorKind::validation, "gain rule needs a positive disturbance bound");
    }
    return {1.5 * std::sqrt(theta_m), 1.1 * theta_m};
}

}  // namespace rtmf
