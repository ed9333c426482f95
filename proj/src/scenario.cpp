#include "rtmf/scenario.hpp"

#include <cmath>

#include "rtmf/error.hpp"

namespace rtmf {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::validation, msg);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorKind::validation, std::string(what) + " must be positive");
}

}  // namespace

void Scenario::validate() const {
    require(dt >= 1e-6 && dt <= 1e-2, "dt must lie in [1e-6, 1e-2] s");
    require_positive(t_end, "t_end");
    require(t_end / dt <= 1e8, "too many steps: t_end/dt exceeds 1e8");

    command.validate();
    disturbance.validate();

    require(x0_plant.size() == 2, "x0_plant must have two states");
    require(x_r0.size() == 3, "x_r0 must have three states");
    for (std::size_t i = 0; i < x0_plant.size(); ++i)
        require(std::isfinite(x0_plant[i]), "x0_plant must be finite");
    for (std::size_t i = 0; i < x_r0.size(); ++i)
        require(std::isfinite(x_r0[i]), "x_r0 must be finite");

    require_positive(gains.k1, "gains.k1");
    require_positive(gains.k2, "gains.k2");
    require_positive(gains.lambda1, "gains.lambda1");
    require_positive(gains.lambda2, "gains.lambda2");
    require_positive(sto_k1, "sto_k1");
    require_positive(sto_k2, "sto_k2");
    require_positive(hosmo_l1, "hosmo_l1");
    require_positive(hosmo_l2, "hosmo_l2");
    require_positive(hosmo_l3, "hosmo_l3");
    require(seed >= 0, "seed must be non-negative");

    switch (controller) {
        case ControllerKind::sto_rtmf:
            require(observer == ObserverKind::sto,
                    "controller sto-rtmf requires observer sto");
            break;
        case ControllerKind::hosmo_rtmf:
            require(observer == ObserverKind::hosmo,
                    "controller hosmo-rtmf requires observer hosmo");
            break;
        case ControllerKind::none:
        case ControllerKind::generic_sta:
            require(observer == ObserverKind::none,
                    "observer runs only under its matching controller");
            break;
    }

    if (plant == PlantKind::nonlinear) {
        require(controller == ControllerKind::none,
                "nonlinear plant supports open-loop scenarios only");
        require(x0_plant[0] > 0.0, "nonlinear plant needs a positive air gap");
    }
}

std::vector<std::string> preset_names() {
    return {"sto-sine",   "sto-trapezoid", "hosmo-sine",
            "hosmo-trapezoid", "generic-sta", "open-loop"};
}

namespace {

Scenario observer_base() {
    Scenario s;
    s.channel = DisturbanceChannel::state;
    s.x0_plant = Vector{0.05, 0.0};
    return s;
}

}  // namespace

Scenario preset(const std::string& name) {
    Scenario s;
    if (name == "sto-sine" || name == "sto-trapezoid") {
        s = observer_base();
        s.controller = ControllerKind::sto_rtmf;
        s.observer = ObserverKind::sto;
        s.gains.lambda1 = 10.0;
        s.gains.lambda2 = 10.0;
        if (name == "sto-trapezoid") s.command = default_trapezoid();
    } else if (name == "hosmo-sine" || name == "hosmo-trapezoid") {
        s = observer_base();
        s.controller = ControllerKind::hosmo_rtmf;
        s.observer = ObserverKind::hosmo;
        s.gains.lambda1 = 15.0;
        s.gains.lambda2 = 15.0;
        if (name == "hosmo-trapezoid") s.command = default_trapezoid();
    } else if (name == "generic-sta") {
        s.controller = ControllerKind::generic_sta;
        s.channel = DisturbanceChannel::input;
        s.gains.k1 = 10.0;
        s.gains.k2 = 10.0;
    } else if (name == "open-loop") {
        s.controller = ControllerKind::none;
        s.command.kind = CommandSignal::Kind::zero;
        s.disturbance.kind = Disturbance::Kind::zero;
    } else {
        std::string known;
        for (const auto& p : preset_names()) known += " " + p;
        fail(ErrorKind::validation, "unknown preset '" + name + "'; known:" + known);
    }
    s.name = name;
    s.validate();
    return s;
}

std::string to_string(PlantKind k) {
    return k == PlantKind::linear ? "linear" : "nonlinear";
}

std::string to_string(ControllerKind k) {
    switch (k) {
        case ControllerKind::none: return "none";
        case ControllerKind::generic_sta: return "generic-sta";
        case ControllerKind::sto_rtmf: return "sto-rtmf";
        case ControllerKind::hosmo_rtmf: return "hosmo-rtmf";
    }
    return "none";
}

std::string to_string(ObserverKind k) {
    switch (k) {
        case ObserverKind::none: return "none";
        case ObserverKind::sto: return "sto";
        case ObserverKind::hosmo: return "hosmo";
    }
    return "none";
}

std::string to_string(DisturbanceChannel k) {
    return k == DisturbanceChannel::input ? "input" : "state";
}

bool plant_kind_from_string(const std::string& name, PlantKind& out) {
    if (name == "linear") out = PlantKind::linear;
    else if (name == "nonlinear") out = PlantKind::nonlinear;
    else return false;
    return true;
}

bool controller_kind_from_string(const std::string& name, ControllerKind& out) {
    if (name == "none") out = ControllerKind::none;
    else if (name == "generic-sta") out = ControllerKind::generic_sta;
    else if (name == "sto-rtmf") out = ControllerKind::sto_rtmf;
    else if (name == "hosmo-rtmf") out = ControllerKind::hosmo_rtmf;
    else return false;
    return true;
}

bool observer_kind_from_string(const std::string& name, ObserverKind& out) {
    if (name == "none") out = ObserverKind::none;
    else if (name == "sto") out = ObserverKind::sto;
    else if (name == "hosmo") out = ObserverKind::hosmo;
    else return false;
    return true;
}

bool channel_from_string(const std::string& name, DisturbanceChannel& out) {
    if (name == "input") out = DisturbanceChannel::input;
    else if (name == "state") out = DisturbanceChannel::state;
    else return false;
    return true;
}

}  // namespace rtmf
