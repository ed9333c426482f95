#pragma once

#include <utility>

#include "rtmf/lti.hpp"
#include "rtmf/matrix.hpp"

namespace rtmf::maglev {

// Linearized magnetic levitation plant in sensor volts:
// xdot1 = x2, xdot2 = kStiffness x1 - kInputGain (u + w).
inline constexpr double kInputGain = 3518.85;
inline constexpr double kStiffness = 2180.0;

Matrix plant_a();
Matrix plant_b();
Matrix plant_c();
UncertainLti linear_plant(double theta_m = 5.0, double theta_dot_m = 5.0);

// Reference model: unit-DC-gain realization of 343000 / (s + 70)^3 in
// companion form, command entering the last integrator.
Matrix model_a_r();
Matrix model_b_r();
Matrix model_c_r();
ReferenceModel reference_model();

// Model-following gains as published (H rounded to [212500, 0, -100]); the
// synthesized exact H is ~[212495.56, 0, -97.475].
Matrix published_g();
Matrix published_h();

// Physical bench parameters (SI units; voltages at the coil/sensor).
struct MaglevParams {
    double mass = 0.02;          // kg
    double gravity = 9.81;       // m/s^2
    double i0 = 0.8;             // A, equilibrium coil current
    double x0 = 0.009;           // m, equilibrium air gap
    double coil_gain = 1.05;     // A/V
    double sensor_gain = 143.48; // V/m
    double u_min = -5.0;         // V
    double u_max = 5.0;          // V

    // Force constant from the equilibrium condition m g = K (i0 / x0)^2.
    double force_const() const { return mass * gravity * x0 * x0 / (i0 * i0); }
    // Coil volts holding the ball at the equilibrium gap.
    double equilibrium_u() const { return i0 / coil_gain; }
};

// Linear plant derivative; w enters the input channel alongside u.
std::pair<double, double> maglev_linear_deriv(double x1, double x2, double u, double w);

// Nonlinear ball dynamics m xddot = m g - K (i / x)^2 with i = coil_gain * u_total.
// Position must stay positive (gap closed -> singularity error).
std::pair<double, double> maglev_nonlinear_deriv(double pos, double vel, double u_total,
                                                 const MaglevParams& params = {});

// Reference model derivative with scalar command r.
Vector refmodel_deriv(const Vector& x_r, double r);

// Closed-loop model from plant-side PID gains: denominator
// s^3 - kd c1 s^2 - (kp c1 + c2) s - ki c1. Output row keeps the numerator
// constant term only unless full_numerator is set. Non-Hurwitz results are
// rejected.
ReferenceModel pid_to_model(double kp, double ki, double kd, double c1 = kInputGain,
                            double c2 = kStiffness, bool full_numerator = false);

}  // namespace rtmf::maglev
