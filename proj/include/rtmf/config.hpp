#pragma once

#include <string>

#include "rtmf/lti.hpp"
#include "rtmf/matrix.hpp"
#include "rtmf/scenario.hpp"

namespace rtmf {

// Scenario as structured plain text: sections [scenario], [command],
// [disturbance], [gains], [init], `key = value` lines, `#` comments. Unknown
// sections or keys are rejected. Numbers are written with 17 significant
// digits, so writing and re-reading reproduces the identical Scenario.
Scenario scenario_from_config(const std::string& text);
std::string scenario_to_config(const Scenario& s);

// One dotted-path assignment "section.key=value" applied on top of a parsed
// scenario, e.g. "gains.lambda1=15" or "scenario.dt=5e-5".
void apply_override(Scenario& s, const std::string& assignment);

// A synthesis job: the plant, the model to follow, and the sliding-surface
// poles. Sections: [synthesis] (plant=maglev|custom, model=maglev|pid|custom,
// poles=...), [plant] (a/b/c rows split by ';', theta_m, theta_dot_m) when
// custom, [model] (kp/ki/kd/full_numerator, or a_r/b_r/c_r) when not maglev.
struct SynthesisJob {
    std::string plant_name = "maglev";
    std::string model_name = "maglev";
    UncertainLti plant;
    ReferenceModel model;
    std::vector<double> surface_poles;
};

SynthesisJob synthesis_job_from_config(const std::string& text);
SynthesisJob maglev_synthesis_job();

}  // namespace rtmf
