#include "rtmf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rtmf/error.hpp"
#include "rtmf/maglev.hpp"
#include "rtmf/observers.hpp"
#include "rtmf/regular_form.hpp"
#include "rtmf/synthesis.hpp"

namespace rtmf {

namespace {

std::string time_str(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

void check_state(double value, double t) {
    if (!std::isfinite(value))
        fail(ErrorKind::divergence, "state became non-finite at t = " + time_str(t) + " s");
    if (std::abs(value) > kBlowupLimit)
        fail(ErrorKind::divergence,
             "state magnitude exceeded 1e6 at t = " + time_str(t) + " s");
}

// Precomputed pieces of the generic tracking law: exact model-following
// gains plus the surface design on the regular form.
struct GenericLaw {
    Matrix g, h;
    RegularForm rf;
    SurfaceDesign des;
};

GenericLaw build_generic_law() {
    GenericLaw law;
    const UncertainLti sys = maglev::linear_plant();
    const SynthesisResult syn = solve_gh(sys, maglev::reference_model());
    law.g = syn.g;
    law.h = syn.h;
    law.rf = to_regular_form(sys);
    law.des = design_k(law.rf, default_surface_poles(law.rf.n() - law.rf.m()));
    return law;
}

}  // namespace

Trajectory simulate(const Scenario& scn) {
    scn.validate();

    const double dt = scn.dt;
    const long n_steps = std::lround(scn.t_end / dt);
    if (n_steps < 1) fail(ErrorKind::validation, "horizon shorter than one step");

    Trajectory tr;
    const std::size_t cap = static_cast<std::size_t>(n_steps) + 1;
    for (auto* col : {&tr.t, &tr.y, &tr.y_r, &tr.e, &tr.x1, &tr.x2, &tr.xhat1, &tr.xhat2,
                      &tr.s, &tr.u, &tr.v, &tr.w, &tr.e1, &tr.e2})
        col->reserve(cap);

    double x1 = scn.x0_plant[0];
    double x2 = scn.x0_plant[1];
    Vector x_r = scn.x_r0;

    StoState sto;
    sto.k1 = scn.sto_k1;
    sto.k2 = scn.sto_k2;
    HosmoState hos;
    hos.l1 = scn.hosmo_l1;
    hos.l2 = scn.hosmo_l2;
    hos.l3 = scn.hosmo_l3;
    ControllerState ctl(1);

    GenericLaw law;
    if (scn.controller == ControllerKind::generic_sta) law = build_generic_law();

    const Matrix h_paper = maglev::published_h();
    const Matrix c_r = maglev::model_c_r();
    const maglev::MaglevParams params;
    const bool bypass = scn.feed_true_states;

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double r_cmd = scn.command.eval(t);
        const double w_now = scn.disturbance.eval(t);
        const double y = scn.plant == PlantKind::linear ? x1 : params.sensor_gain * x1;
        const double y_r = c_r(0, 0) * x_r[0] + c_r(0, 1) * x_r[1] + c_r(0, 2) * x_r[2];

        double u_now = 0.0, v_now = 0.0, s_now = 0.0;
        double xh1 = 0.0, xh2 = 0.0, e1_now = 0.0, e2_now = 0.0;

        switch (scn.controller) {
            case ControllerKind::none:
                break;
            case ControllerKind::generic_sta: {
                const std::size_t n = law.rf.n(), m = law.rf.m();
                Vector z(2);
                z[0] = x1 - (law.g(0, 0) * x_r[0] + law.g(0, 1) * x_r[1] + law.g(0, 2) * x_r[2]);
                z[1] = x2 - (law.g(1, 0) * x_r[0] + law.g(1, 1) * x_r[1] + law.g(1, 2) * x_r[2]);
                const Vector z_reg = law.rf.t1 * z;
                Vector eta(n - m), xi(m);
                for (std::size_t i = 0; i < n - m; ++i) eta[i] = z_reg[i];
                for (std::size_t i = 0; i < m; ++i) xi[i] = z_reg[n - m + i];
                const Vector sig = sigma(law.des, eta, xi);
                const Vector v_prime = sta_core(sig, ctl, scn.gains.k1, scn.gains.k2, dt);
                const Vector v_vec = generic_v(law.des, eta, sig, v_prime);
                v_now = v_vec[0];
                u_now = (law.h * x_r)[0] + v_now;
                s_now = sig[0];
                break;
            }
            case ControllerKind::sto_rtmf: {
                xh1 = bypass ? x1 : sto.xhat1;
                xh2 = bypass ? x2 : sto.xhat2;
                const double e1_law = bypass ? 0.0 : y - sto.xhat1;
                const double s_hat =
                    (y - c_r(0, 0) * x_r[0]) + (xh2 - c_r(0, 0) * x_r[1]);
                v_now = maglev::v_sto(xh1, xh2, x_r, e1_law, s_hat, ctl, scn.gains,
                                      scn.sto_k2, dt);
                u_now = (h_paper * x_r)[0] + v_now;
                s_now = s_hat;
                e1_now = bypass ? 0.0 : x1 - sto.xhat1;
                e2_now = bypass ? 0.0 : x2 - sto.xhat2;
                break;
            }
            case ControllerKind::hosmo_rtmf: {
                xh1 = bypass ? x1 : hos.xhat1;
                xh2 = bypass ? x2 : hos.xhat2;
                // Frozen-at-zero error means e3 = w - xhat3 = 0 as well.
                const double xh3 = bypass ? w_now : hos.xhat3;
                const double e1_law = bypass ? 0.0 : y - hos.xhat1;
                const double s_hat =
                    (y - c_r(0, 0) * x_r[0]) + (xh2 - c_r(0, 0) * x_r[1]);
                v_now = maglev::v_hosmo(xh1, xh2, xh3, x_r, e1_law, s_hat, ctl, scn.gains,
                                        scn.hosmo_l2, dt);
                u_now = (h_paper * x_r)[0] + v_now;
                s_now = s_hat;
                e1_now = bypass ? 0.0 : x1 - hos.xhat1;
                e2_now = bypass ? 0.0 : x2 - hos.xhat2;
                break;
            }
        }

        if (scn.saturation) u_now = std::clamp(u_now, params.u_min, params.u_max);

        tr.t.push_back(t);
        tr.y.push_back(y);
        tr.y_r.push_back(y_r);
        tr.e.push_back(y - y_r);
        tr.x1.push_back(x1);
        tr.x2.push_back(x2);
        tr.xhat1.push_back(xh1);
        tr.xhat2.push_back(xh2);
        tr.s.push_back(s_now);
        tr.u.push_back(u_now);
        tr.v.push_back(v_now);
        tr.w.push_back(w_now);
        tr.e1.push_back(e1_now);
        tr.e2.push_back(e2_now);

        if (k == n_steps) break;

        double d1 = 0.0, d2 = 0.0;
        if (scn.plant == PlantKind::linear) {
            if (scn.channel == DisturbanceChannel::input) {
                const auto [dd1, dd2] = maglev::maglev_linear_deriv(x1, x2, u_now, w_now);
                d1 = dd1;
                d2 = dd2;
            } else {
                const auto [dd1, dd2] = maglev::maglev_linear_deriv(x1, x2, u_now, 0.0);
                d1 = dd1;
                d2 = dd2 + w_now;
            }
        } else {
            const double u_coil =
                u_now + (scn.channel == DisturbanceChannel::input ? w_now : 0.0);
            const auto [dd1, dd2] = maglev::maglev_nonlinear_deriv(x1, x2, u_coil, params);
            d1 = dd1;
            d2 = dd2 + (scn.channel == DisturbanceChannel::state ? w_now : 0.0);
        }

        if (!bypass) {
            if (scn.observer == ObserverKind::sto) sto = sto_step(sto, y, u_now, dt);
            if (scn.observer == ObserverKind::hosmo) hos = hosmo_step(hos, y, u_now, dt);
        }

        const Vector xr_dot = maglev::refmodel_deriv(x_r, r_cmd);
        for (std::size_t i = 0; i < x_r.size(); ++i) x_r[i] += dt * xr_dot[i];

        x1 += dt * d1;
        x2 += dt * d2;

        const double t_next = static_cast<double>(k + 1) * dt;
        check_state(x1, t_next);
        check_state(x2, t_next);
        for (std::size_t i = 0; i < x_r.size(); ++i) check_state(x_r[i], t_next);
        if (scn.observer == ObserverKind::sto) {
            check_state(sto.xhat1, t_next);
            check_state(sto.xhat2, t_next);
        }
        if (scn.observer == ObserverKind::hosmo) {
            check_state(hos.xhat1, t_next);
            check_state(hos.xhat2, t_next);
            check_state(hos.xhat3, t_next);
        }
        check_state(ctl.omega_int[0], t_next);
    }

    return tr;
}

Metrics compute_metrics(const Trajectory& tr, double t_steady) {
    if (tr.size() == 0) fail(ErrorKind::validation, "empty trajectory");
    const double t_end = tr.t.back();
    if (!(t_steady < t_end)) fail(ErrorKind::validation, "steady window is empty");

    std::size_t i0 = 0;
    while (i0 < tr.size() && tr.t[i0] < t_steady) ++i0;
    if (i0 >= tr.size()) fail(ErrorKind::validation, "steady window is empty");

    Metrics m;
    double sum_sq = 0.0, tv = 0.0;
    for (std::size_t i = i0; i < tr.size(); ++i) {
        sum_sq += tr.e[i] * tr.e[i];
        m.sliding_band = std::max(m.sliding_band, std::abs(tr.s[i]));
        m.max_abs_u = std::max(m.max_abs_u, std::abs(tr.u[i]));
        if (i + 1 < tr.size()) tv += std::abs(tr.u[i + 1] - tr.u[i]);
    }
    m.tracking_rms_steady = std::sqrt(sum_sq / static_cast<double>(tr.size() - i0));
    m.control_tv_rate = tv / (t_end - t_steady);

    // Convergence time over the whole run: last band violation, then one
    // sample later. Runs with identically zero error columns report t = 0.
    std::size_t i = tr.size();
    while (i > 0) {
        const std::size_t j = i - 1;
        if (std::abs(tr.e1[j]) > kObserverBandE1 || std::abs(tr.e2[j]) > kObserverBandE2)
            break;
        i = j;
    }
    m.observer_t_conv = i < tr.size() ? tr.t[i] : -1.0;
    return m;
}

namespace {

double ratio(double a, double b) {
    if (a == b) return 1.0;
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    return b / a;
}

}  // namespace

CompareReport compare(const Scenario& a, const Scenario& b) {
    if (a.t_end != b.t_end)
        fail(ErrorKind::validation, "compare: mismatched horizons");
    if (a.command.kind != b.command.kind || a.command.amplitude != b.command.amplitude ||
        a.command.period != b.command.period)
        fail(ErrorKind::validation, "compare: commands differ");
    if (a.disturbance.kind != b.disturbance.kind ||
        a.disturbance.amplitude != b.disturbance.amplitude ||
        a.disturbance.frequency != b.disturbance.frequency)
        fail(ErrorKind::validation, "compare: disturbances differ");

    const Trajectory ta = simulate(a);
    const Trajectory tb = simulate(b);

    CompareReport rep;
    rep.a = compute_metrics(ta, a.t_end / 2.0);
    rep.b = compute_metrics(tb, b.t_end / 2.0);
    rep.rms_ratio = ratio(rep.a.tracking_rms_steady, rep.b.tracking_rms_steady);
    rep.band_ratio = ratio(rep.a.sliding_band, rep.b.sliding_band);
    rep.tv_ratio = ratio(rep.a.control_tv_rate, rep.b.control_tv_rate);
    rep.max_u_ratio = ratio(rep.a.max_abs_u, rep.b.max_abs_u);
    return rep;
}

}  // namespace rtmf
