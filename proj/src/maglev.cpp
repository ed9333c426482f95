#include "rtmf/maglev.hpp"

#include <cmath>
#include <sstream>

#include "rtmf/error.hpp"

namespace rtmf::maglev {

Matrix plant_a() { return Matrix{{0.0, 1.0}, {kStiffness, 0.0}}; }
Matrix plant_b() { return Matrix{{0.0}, {-kInputGain}}; }
Matrix plant_c() { return Matrix{{1.0, 0.0}}; }

UncertainLti linear_plant(double theta_m, double theta_dot_m) {
    UncertainLti sys;
    sys.a = plant_a();
    sys.b = plant_b();
    sys.c = plant_c();
    sys.theta_m = theta_m;
    sys.theta_dot_m = theta_dot_m;
    sys.validate();
    return sys;
}

Matrix model_a_r() {
    return Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {-343000.0, -14700.0, -210.0}};
}

Matrix model_b_r() { return Matrix{{0.0}, {0.0}, {1.0}}; }

Matrix model_c_r() { return Matrix{{343000.0, 0.0, 0.0}}; }

ReferenceModel reference_model() {
    ReferenceModel model;
    model.a_r = model_a_r();
    model.b_r = model_b_r();
    model.c_r = model_c_r();
    model.x_r0 = Vector{1e-5, 0.0, 0.0};
    model.validate();
    return model;
}

Matrix published_g() {
    return Matrix{{343000.0, 0.0, 0.0}, {0.0, 343000.0, 0.0}};
}

Matrix published_h() { return Matrix{{212500.0, 0.0, -100.0}}; }

std::pair<double, double> maglev_linear_deriv(double x1, double x2, double u, double w) {
    return {x2, kStiffness * x1 - kInputGain * (u + w)};
}

std::pair<double, double> maglev_nonlinear_deriv(double pos, double vel, double u_total,
                                                 const MaglevParams& params) {
    if (!(pos > 0.0)) {
        std::ostringstream msg;
        msg << "maglev gap closed: ball position " << pos << " m is not positive";
        fail(ErrorKind::divergence, msg.str());
    }
    const double current = params.coil_gain * u_total;
    const double ratio = current / pos;
    const double acc = params.gravity - params.force_const() * ratio * ratio / params.mass;
    return {vel, acc};
}

Vector refmodel_deriv(const Vector& x_r, double r) {
    if (x_r.size() != 3) {
        fail(ErrorKind::validation, "reference model state must have 3 entries");
    }
    return Vector{x_r[1], x_r[2],
                  -343000.0 * x_r[0] - 14700.0 * x_r[1] - 210.0 * x_r[2] + r};
}

ReferenceModel pid_to_model(double kp, double ki, double kd, double c1, double c2,
                            bool full_numerator) {
    if (!(c1 != 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
        fail(ErrorKind::validation, "PID closed loop needs a finite nonzero input gain");
    }
    // Characteristic polynomial s^3 + a2 s^2 + a1 s + a0 of the PID loop.
    const double a2 = -kd * c1;
    const double a1 = -(kp * c1 + c2);
    const double a0 = -ki * c1;

    ReferenceModel model;
    model.a_r = Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {-a0, -a1, -a2}};
    model.b_r = Matrix{{0.0}, {0.0}, {1.0}};
    if (full_numerator) {
        model.c_r = Matrix{{-ki * c1, -kp * c1, -kd * c1}};
    } else {
        model.c_r = Matrix{{-ki * c1, 0.0, 0.0}};
    }
    model.x_r0 = Vector(3);
    try {
        model.validate();
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << "PID gains (kp=" << kp << ", ki=" << ki << ", kd=" << kd
            << ") do not yield a stable closed loop: " << e.what();
        fail(ErrorKind::validation, msg.str());
    }
    return model;
}

}  // namespace rtmf::maglev
