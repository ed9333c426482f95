#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "rtmf/config.hpp"
#include "rtmf/error.hpp"
#include "rtmf/io.hpp"
#include "rtmf/maglev.hpp"
#include "rtmf/synthesis.hpp"

using namespace rtmf;

TEST_CASE("every preset survives a config round trip unchanged") {
    for (const auto& name : preset_names()) {
        const Scenario s = preset(name);
        const Scenario back = scenario_from_config(scenario_to_config(s));
        CHECK(back == s);
    }
}

TEST_CASE("awkward numbers and table disturbances round trip exactly") {
    Scenario s;
    s.name = "corner";
    s.controller = ControllerKind::generic_sta;
    s.command = default_trapezoid();
    s.command.amplitude = 1.0 / 3.0;
    s.disturbance.kind = Disturbance::Kind::table;
    s.disturbance.table_t = {0.0, 0.1, 2.0};
    s.disturbance.table_w = {0.0, 3.141592653589793, -1e-17};
    s.dt = 2.5e-5;
    s.x0_plant = Vector{0.123456789012345678, -0.25};
    s.validate();
    CHECK(scenario_from_config(scenario_to_config(s)) == s);
}

TEST_CASE("config parser accepts comments and rejects malformed input") {
    const Scenario base = scenario_from_config(
        "# top comment\n"
        "[scenario]\n"
        "controller = none   # trailing comment\n"
        "\n"
        "[command]\n"
        "kind = zero\n");
    CHECK(base.controller == ControllerKind::none);
    CHECK(base.command.kind == CommandSignal::Kind::zero);

    CHECK_THROWS_AS(scenario_from_config("[scenario\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("dt = 1\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[scenario]\njust a line\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[scenario]\ndt = 1e-4\ndt = 1e-3\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[scenario]\nwhat = 1\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[mystery]\nk = 1\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[scenario]\ndt = fast\n"), Error);
    CHECK_THROWS_AS(scenario_from_config("[scenario]\nsaturation = sure\n"), Error);
    // Parsed fine, fails validation: observer without its controller pairing.
    CHECK_THROWS_AS(scenario_from_config("[scenario]\nobserver = sto\n"), Error);
}

TEST_CASE("dotted overrides update fields and reject bad paths") {
    Scenario s = preset("sto-sine");
    apply_override(s, "gains.lambda1=15");
    apply_override(s, "scenario.dt = 5e-05");
    apply_override(s, "init.x0_plant=0.01 0");
    CHECK(s.gains.lambda1 == 15.0);
    CHECK(s.dt == 5e-5);
    CHECK(s.x0_plant == Vector{0.01, 0.0});
    s.validate();

    CHECK_THROWS_AS(apply_override(s, "gains.lambda1"), Error);
    CHECK_THROWS_AS(apply_override(s, "lambda1=15"), Error);
    CHECK_THROWS_AS(apply_override(s, "gains.nope=1"), Error);
    CHECK_THROWS_AS(apply_override(s, "gains.lambda1=abc"), Error);
}

TEST_CASE("synthesis job config paths") {
    const SynthesisJob dflt = maglev_synthesis_job();
    CHECK(dflt.plant_name == "maglev");
    CHECK(dflt.surface_poles == std::vector<double>{-1.0});

    const SynthesisJob named =
        synthesis_job_from_config("[synthesis]\nplant = maglev\nmodel = maglev\n");
    CHECK(named.model_name == "maglev");
    CHECK(solve_gh(named.plant, named.model).g == solve_gh(dflt.plant, dflt.model).g);

    // Custom plant spelled out as matrices reproduces the built-in one.
    const SynthesisJob custom = synthesis_job_from_config(
        "[synthesis]\nplant = custom\n"
        "[plant]\n"
        "a = 0 1 ; 2180 0\n"
        "b = 0 ; -3518.85\n"
        "c = 1 0\n"
        "theta_m = 5\n"
        "theta_dot_m = 5\n");
    CHECK(custom.plant.a == maglev::plant_a());
    CHECK(custom.plant.b == maglev::plant_b());
    CHECK(solve_gh(custom.plant, custom.model).g == solve_gh(dflt.plant, dflt.model).g);

    // PID-shaped model goes through the closed-loop construction.
    const SynthesisJob pid = synthesis_job_from_config(
        "[synthesis]\nmodel = pid\n"
        "[model]\nkp = -4\nki = -2\nkd = -0.06\n");
    const ReferenceModel direct = maglev::pid_to_model(-4.0, -2.0, -0.06);
    CHECK(pid.model.a_r == direct.a_r);
    CHECK(pid.model.c_r == direct.c_r);

    CHECK_THROWS_AS(synthesis_job_from_config("[synthesis]\nplant = exotic\n"), Error);
    CHECK_THROWS_AS(synthesis_job_from_config("[synthesis]\nmodel = pid\n"), Error);
    CHECK_THROWS_AS(
        synthesis_job_from_config("[synthesis]\nmodel = pid\n[model]\nkp = -4\nki = -2\n"),
        Error);
    CHECK_THROWS_AS(synthesis_job_from_config("[plant]\na = 0 1 ; 2180 0\n"), Error);
    CHECK_THROWS_AS(synthesis_job_from_config("[synthesis]\npoles = -1 -2\n"), Error);
    CHECK_THROWS_AS(synthesis_job_from_config(
                        "[synthesis]\nplant = custom\n[plant]\na = 0 1 ; 2\nb = 0 ; 1\nc = 1 0\n"),
                    Error);
}

TEST_CASE("atomic writes produce the file and clean up the temp") {
    const std::string path = "test_io_scratch.txt";
    write_file_atomic(path, "alpha\n");
    write_file_atomic(path, "beta\n");  // overwrite goes through the same dance
    CHECK(read_file(path) == "beta\n");
    CHECK(!std::ifstream(path + ".tmp").good());
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file(path), Error);
    CHECK_THROWS_AS(write_file_atomic("no_such_dir/x.txt", "y"), Error);
}

TEST_CASE("trajectory csv has the pinned header and full precision") {
    Trajectory tr;
    tr.t = {0.0};
    tr.y = {1.0 / 3.0};
    tr.y_r = {0.0};
    tr.e = {0.0};
    tr.x1 = {0.0};
    tr.x2 = {0.0};
    tr.xhat1 = {0.0};
    tr.xhat2 = {0.0};
    tr.s = {0.0};
    tr.u = {-2.5};
    tr.v = {0.0};
    tr.w = {5.0};
    tr.e1 = {0.0};
    tr.e2 = {1e-12};
    const std::string csv = trajectory_csv(tr);
    CHECK(csv ==
          "t,y,y_r,e,x1,x2,xhat1,xhat2,s,u,v,w,e1,e2\n"
          "0,0.333333333333333,0,0,0,0,0,0,0,-2.5,0,5,0,1e-12\n");
}

TEST_CASE("identical runs serialize to identical bytes") {
    Scenario s = preset("sto-sine");
    s.t_end = 2.0;
    CHECK(trajectory_csv(simulate(s)) == trajectory_csv(simulate(s)));
}

TEST_CASE("metrics serializations carry the same numbers") {
    Metrics m;
    m.tracking_rms_steady = 0.005;
    m.sliding_band = 3.2e-5;
    m.observer_t_conv = 0.0121;
    m.control_tv_rate = 2244.43;
    m.max_abs_u = 0.735;
    const std::string text = metrics_text(m);
    CHECK(text.find("tracking_rms_steady = 0.005") != std::string::npos);
    CHECK(text.find("observer_t_conv = 0.0121") != std::string::npos);
    const auto doc = nlohmann::json::parse(metrics_json(m));
    CHECK(doc["sliding_band"].get<double>() == 3.2e-5);
    CHECK(doc["max_abs_u"].get<double>() == 0.735);
}

TEST_CASE("compare report carries ratios and the smoothness verdict") {
    Scenario a = preset("sto-sine");
    Scenario b = preset("hosmo-sine");
    a.t_end = 8.0;
    b.t_end = 8.0;
    const CompareReport rep = compare(a, b);
    const std::string text = compare_text(a, b, rep);
    CHECK(text.find("HOSMO smoother: yes") != std::string::npos);
    CHECK(text.find("smaller sliding band: b") != std::string::npos);
    const auto doc = nlohmann::json::parse(compare_json(a, b, rep));
    CHECK(doc["hosmo_smoother"].get<bool>());
    CHECK(doc["ratios"]["control_tv_rate"].get<double>() == rep.tv_ratio);

    // Swapped order flips the ratio direction but not the verdict.
    const CompareReport swapped = compare(b, a);
    const std::string text2 = compare_text(b, a, swapped);
    CHECK(swapped.tv_ratio > 1.0);
    CHECK(text2.find("HOSMO smoother: yes") != std::string::npos);
}

TEST_CASE("synthesis report prints the benchmark gains and audit") {
    const SynthesisJob job = maglev_synthesis_job();
    const SynthesisResult res = solve_gh(job.plant, job.model);
    const SurfaceDesign surface =
        design_k(to_regular_form(job.plant), job.surface_poles);
    const std::string text = synthesis_report_text(job, res, surface);
    CHECK(text.find("feasible = yes") != std::string::npos);
    CHECK(text.find("g row 1 = 343000 0 0") != std::string::npos);
    CHECK(text.find("g row 2 = 0 343000 0") != std::string::npos);
    CHECK(text.find("residual_out = 0") != std::string::npos);

    const auto doc = nlohmann::json::parse(synthesis_report_json(job, res, surface));
    CHECK(doc["g"][0][0].get<double>() == 343000.0);
    CHECK(doc["residual_dyn"].get<double>() <= 1e-8);  // exact-arithmetic gains
    CHECK(doc["feasible"].get<bool>());
    for (const auto& eig : doc["model_eig_real_parts"])
        CHECK(eig.get<double>() == doctest::Approx(-70.0).epsilon(1e-9));
    CHECK(doc["model_dc_gain"][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}
