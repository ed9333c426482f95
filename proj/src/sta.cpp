#include "rtmf/sta.hpp"

#include <cmath>

#include "rtmf/error.hpp"
#include "rtmf/maglev.hpp"

namespace rtmf {

Vector sta_core(const Vector& sigma, ControllerState& state, double k1, double k2, double dt) {
    if (!(dt > 0.0)) fail(ErrorKind::validation, "sta_core needs dt > 0");
    if (!(k1 > 0.0) || !(k2 > 0.0)) fail(ErrorKind::validation, "sta_core needs positive gains");
    if (sigma.size() != state.omega_int.size()) {
        fail(ErrorKind::validation, "sta_core: sigma and integral state sizes differ");
    }
    Vector v(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double s = sigma[i];
        v[i] = -k1 * std::sqrt(std::abs(s)) * sign0(s) + state.omega_int[i];
        state.omega_int[i] -= k2 * sign0(s) * dt;
    }
    state.omega_int.ensure_finite("sta integral state");
    state.t += dt;
    return v;
}

Vector rtmf_control(const Matrix& h, const Vector& x_r, const Vector& v) {
    return h * x_r + v;
}

Vector generic_v(const SurfaceDesign& design, const Vector& eta, const Vector& sigma,
                 const Vector& v_prime) {
    return v_prime - (design.script_a * eta + design.a22_eff * sigma);
}

namespace maglev {

namespace {

// Shared skeleton of the bench laws: v = -(1/C1)(-xhat2 - C2 xhat1
// + kFfXr1 x_r1 + kFfXr2 x_r2 - kFfXr3 x_r3 - injection + v') where the
// injection is the observer term reproduced so it cancels out of the
// s_hat dynamics.
double bench_v(double xhat1, double xhat2, const Vector& x_r, double injection, double s_hat,
               ControllerState& state, double lambda1, double lambda2, double dt) {
    if (x_r.size() != 3) fail(ErrorKind::validation, "bench law needs a 3-state reference");
    const Vector v_prime = sta_core(Vector{s_hat}, state, lambda1, lambda2, dt);
    const double bracket = -xhat2 - kStiffness * xhat1 + kFfXr1 * x_r[0] + kFfXr2 * x_r[1] -
                           kFfXr3 * x_r[2] - injection + v_prime[0];
    return -bracket / kInputGain;
}

}  // namespace

double v_sto(double xhat1, double xhat2, const Vector& x_r, double e1, double s_hat,
             ControllerState& state, const StaGains& gains, double k2_obs, double dt) {
    const double injection = k2_obs * sign0(e1);
    return bench_v(xhat1, xhat2, x_r, injection, s_hat, state, gains.lambda1, gains.lambda2, dt);
}

double v_hosmo(double xhat1, double xhat2, double xhat3, const Vector& x_r, double e1,
               double s_hat, ControllerState& state, const StaGains& gains, double l2_obs,
               double dt) {
    const double injection = l2_obs * std::cbrt(std::abs(e1)) * sign0(e1) + xhat3;
    return bench_v(xhat1, xhat2, x_r, injection, s_hat, state, gains.lambda1, gains.lambda2, dt);
}

}  // namespace maglev

}  // namespace rtmf
