#pragma once

#include <utility>

namespace rtmf {

// Super-twisting observer for the bench plant (position measured, velocity
// reconstructed). Injection uses |e1|^1/2 sign(e1), matching the observer's
// own error dynamics rather than the plain sign sometimes displayed.
struct StoState {
    double xhat1 = 0.0;
    double xhat2 = 0.0;
    double k1 = 50.0;
    double k2 = 400.0;
};

StoState sto_step(const StoState& st, double y_meas, double u, double dt);

// Higher-order sliding-mode observer; xhat3 integrates L3 sign(e1) and acts
// as the disturbance estimate. The bench control law reads xhat3 directly so
// the injection integral has a single source of truth.
struct HosmoState {
    double xhat1 = 0.0;
    double xhat2 = 0.0;
    double xhat3 = 0.0;
    double l1 = 35.0;
    double l2 = 100.0;
    double l3 = 600.0;
};

HosmoState hosmo_step(const HosmoState& st, double y_meas, double u, double dt);

// Gain rule K1 = 1.5 sqrt(theta_M), K2 = 1.1 theta_M for a disturbance
// bounded by theta_M. The bench presets instead ship the experimental
// gains (50, 400), which produced the reference results.
std::pair<double, double> recommend_sto_gains(double theta_m);

}  // namespace rtmf
