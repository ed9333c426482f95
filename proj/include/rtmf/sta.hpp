#pragma once

#include "rtmf/matrix.hpp"
#include "rtmf/regular_form.hpp"

namespace rtmf {

// sign(0) := 0 keeps the rest point of every sliding law exact.
inline double sign0(double x) noexcept { return (x > 0.0) - (x < 0.0); }

// Gains of the super-twisting laws. k1/k2 drive the generic tracking
// controller; lambda1/lambda2 drive the observer-coupled bench laws.
// Finite-time convergence needs k2 above the disturbance rate bound.
struct StaGains {
    double k1 = 10.0;
    double k2 = 10.0;
    double lambda1 = 10.0;
    double lambda2 = 10.0;

    bool operator==(const StaGains&) const = default;
};

// Integral state of a super-twisting law, one component per input channel.
struct ControllerState {
    Vector omega_int;
    double t = 0.0;

    explicit ControllerState(std::size_t m = 1) : omega_int(m) {}
};

// Core super-twisting step, componentwise:
//   v'_i = -k1 |s_i|^1/2 sign(s_i) + Omega_i,  Omega_i' = -k2 sign(s_i).
// Returns v' evaluated at the current integral state, then advances the
// state by explicit Euler.
Vector sta_core(const Vector& sigma, ControllerState& state, double k1, double k2, double dt);

inline Vector sta_core(const Vector& sigma, ControllerState& state, const StaGains& gains,
                       double dt) {
    return sta_core(sigma, state, gains.k1, gains.k2, dt);
}

// Tracking law u = H x_r + v.
Vector rtmf_control(const Matrix& h, const Vector& x_r, const Vector& v);

// Drift cancellation for the generic law: v = -(script_A eta + A22_eff sigma) + v',
// which reduces the sigma rows of the closed loop to sigma' = v' + w.
Vector generic_v(const SurfaceDesign& design, const Vector& eta, const Vector& sigma,
                 const Vector& v_prime);

namespace maglev {

// Feedforward constants of the bench control laws: the published H scaled
// through the input gain. kFfXr1 = 3518.85 * 212500; kFfXr2 = 343000 (H2 = 0
// contributes nothing); kFfXr3 = 3518.85 * 100 - 343000.
inline constexpr double kFfXr1 = 747755625.0;
inline constexpr double kFfXr2 = 343000.0;
inline constexpr double kFfXr3 = 8885.0;

// Bench law under the super-twisting observer. s_hat = (y - 343000 x_r1) +
// (xhat2 - 343000 x_r2); k2_obs is the observer's switching gain, whose
// injection must be cancelled here. Closed form leaves s_hat' = e2 + v'.
double v_sto(double xhat1, double xhat2, const Vector& x_r, double e1, double s_hat,
             ControllerState& state, const StaGains& gains, double k2_obs, double dt);

// Bench law under the higher-order observer: the switching injection is
// replaced by the continuous L2 |e1|^1/3 term plus the observer's own
// disturbance integral xhat3 (shared state, not re-integrated here).
double v_hosmo(double xhat1, double xhat2, double xhat3, const Vector& x_r, double e1,
               double s_hat, ControllerState& state, const StaGains& gains, double l2_obs,
               double dt);

}  // namespace maglev

}  // namespace rtmf
