// Front end over the shared C API: scenario plumbing, file outputs, exit
// codes. All numerics live behind librtmf; this file only moves strings.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtmf/capi.h"

namespace {

namespace fs = std::filesystem;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void bail(rtmf_status st, const std::string& context) {
    throw CliError{static_cast<int>(st), context + ": " + rtmf_last_error()};
}

[[noreturn]] void bail_validation(const std::string& message) {
    throw CliError{static_cast<int>(RTMF_ERR_VALIDATION), message};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bail_validation("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string owned(char* s) {
    std::string out = s == nullptr ? std::string() : std::string(s);
    rtmf_string_free(s);
    return out;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Common scenario source + tweak flags shared by simulate and compare.
struct ScenarioArgs {
    std::string preset;
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<double> dt;
    std::optional<double> t_end;
};

void add_tweak_flags(CLI::App& cmd, ScenarioArgs& args) {
    cmd.add_option("--set", args.sets, "Override a field, dotted path (gains.lambda1=15)");
    cmd.add_option("--dt", args.dt, "Override the integration step");
    cmd.add_option("--t-end", args.t_end, "Override the horizon");
}

void apply_tweaks(rtmf_scenario* scn, const ScenarioArgs& args) {
    for (const auto& assignment : args.sets) {
        if (rtmf_scenario_override(scn, assignment.c_str()) != RTMF_OK)
            bail(RTMF_ERR_VALIDATION, "--set " + assignment);
    }
    if (args.dt) {
        const std::string a = "scenario.dt=" + fmt_full(*args.dt);
        if (rtmf_scenario_override(scn, a.c_str()) != RTMF_OK) bail(RTMF_ERR_VALIDATION, "--dt");
    }
    if (args.t_end) {
        const std::string a = "scenario.t_end=" + fmt_full(*args.t_end);
        if (rtmf_scenario_override(scn, a.c_str()) != RTMF_OK) bail(RTMF_ERR_VALIDATION, "--t-end");
    }
    if (rtmf_scenario_validate(scn) != RTMF_OK) bail(RTMF_ERR_VALIDATION, "scenario");
}

rtmf_scenario* load_scenario(const ScenarioArgs& args) {
    if (args.preset.empty() == args.config_path.empty())
        bail_validation("exactly one of --preset or --config is required");
    rtmf_scenario* scn = nullptr;
    if (!args.preset.empty()) {
        if (rtmf_scenario_preset(args.preset.c_str(), &scn) != RTMF_OK)
            bail(RTMF_ERR_VALIDATION, "--preset " + args.preset);
    } else {
        const std::string text = read_text_file(args.config_path);
        if (rtmf_scenario_from_config(text.c_str(), &scn) != RTMF_OK)
            bail(RTMF_ERR_VALIDATION, args.config_path);
    }
    apply_tweaks(scn, args);
    return scn;
}

// Compare positionals: try the preset table first, fall back to a file path.
rtmf_scenario* load_named_or_file(const std::string& ref, const ScenarioArgs& tweaks) {
    rtmf_scenario* scn = nullptr;
    if (rtmf_scenario_preset(ref.c_str(), &scn) != RTMF_OK) {
        if (!fs::exists(ref))
            bail_validation(ref + " is neither a preset name nor a config file");
        const std::string text = read_text_file(ref);
        if (rtmf_scenario_from_config(text.c_str(), &scn) != RTMF_OK)
            bail(RTMF_ERR_VALIDATION, ref);
    }
    apply_tweaks(scn, tweaks);
    return scn;
}

// Everything is computed before the first write; a failed run leaves the
// output directory untouched.
void write_outputs(const std::string& out_dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) bail_validation("cannot create output directory " + out_dir + ": " + ec.message());
    for (const auto& [name, content] : files) {
        const std::string path = (fs::path(out_dir) / name).string();
        if (rtmf_write_file(path.c_str(), content.c_str()) != RTMF_OK)
            bail(RTMF_ERROR, path);
    }
}

int cmd_presets() {
    const size_t count = rtmf_preset_count();
    for (size_t i = 0; i < count; ++i) std::cout << rtmf_preset_name(i) << '\n';
    return 0;
}

int cmd_simulate(const ScenarioArgs& args, const std::string& out_dir) {
    rtmf_scenario* scn = load_scenario(args);
    rtmf_result* res = nullptr;
    const rtmf_status st = rtmf_simulate(scn, &res);
    if (st != RTMF_OK) {
        const std::string why = rtmf_last_error();
        rtmf_scenario_free(scn);
        throw CliError{static_cast<int>(st), "simulation failed: " + why};
    }

    char* csv = nullptr;
    char* mtext = nullptr;
    char* mjson = nullptr;
    char* conf = nullptr;
    rtmf_result_csv(res, &csv);
    rtmf_result_metrics_text(res, &mtext);
    rtmf_result_metrics_json(res, &mjson);
    rtmf_scenario_to_config(scn, &conf);
    const std::string metrics = owned(mtext);
    write_outputs(out_dir, {{"trajectory.csv", owned(csv)},
                            {"metrics.txt", metrics},
                            {"metrics.json", owned(mjson)},
                            {"scenario.conf", owned(conf)}});
    rtmf_result_free(res);
    rtmf_scenario_free(scn);
    std::cout << metrics;
    return 0;
}

int cmd_synthesize(const std::string& config_path, const std::string& out_dir) {
    std::string text;
    const char* config = nullptr;
    if (!config_path.empty()) {
        text = read_text_file(config_path);
        config = text.c_str();
    }
    char* report = nullptr;
    char* json = nullptr;
    const rtmf_status st = rtmf_synthesize(config, &report, &json);
    if (st != RTMF_OK) throw CliError{static_cast<int>(st), std::string(rtmf_last_error())};
    const std::string report_text = owned(report);
    write_outputs(out_dir, {{"synthesis.txt", report_text}, {"synthesis.json", owned(json)}});
    std::cout << report_text;
    return 0;
}

int cmd_compare(const std::string& ref_a, const std::string& ref_b, const ScenarioArgs& tweaks,
                const std::string& out_dir) {
    rtmf_scenario* a = load_named_or_file(ref_a, tweaks);
    rtmf_scenario* b = nullptr;
    try {
        b = load_named_or_file(ref_b, tweaks);
    } catch (...) {
        rtmf_scenario_free(a);
        throw;
    }
    char* report = nullptr;
    char* json = nullptr;
    const rtmf_status st = rtmf_compare(a, b, &report, &json);
    const std::string why = st == RTMF_OK ? std::string() : std::string(rtmf_last_error());
    rtmf_scenario_free(a);
    rtmf_scenario_free(b);
    if (st != RTMF_OK) throw CliError{static_cast<int>(st), "compare failed: " + why};
    const std::string report_text = owned(report);
    write_outputs(out_dir, {{"compare.txt", report_text}, {"compare.json", owned(json)}});
    std::cout << report_text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust tracking and model following toolkit"};
    app.require_subcommand(1);

    auto* presets_cmd = app.add_subcommand("presets", "List built-in scenario names");

    ScenarioArgs sim_args;
    std::string sim_out = ".";
    auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario, write CSV and metrics");
    sim_cmd->add_option("--preset", sim_args.preset, "Built-in scenario name");
    sim_cmd->add_option("--config", sim_args.config_path, "Scenario config file");
    sim_cmd->add_option("--out", sim_out, "Output directory");
    add_tweak_flags(*sim_cmd, sim_args);

    std::string syn_config;
    std::string syn_out = ".";
    auto* syn_cmd = app.add_subcommand("synthesize", "Solve the model-following gains");
    syn_cmd->add_option("--config", syn_config, "Synthesis job config file");
    syn_cmd->add_option("--out", syn_out, "Output directory");

    std::string cmp_a, cmp_b;
    ScenarioArgs cmp_tweaks;
    std::string cmp_out = ".";
    auto* cmp_cmd = app.add_subcommand("compare", "Paired run of two scenarios");
    cmp_cmd->add_option("a", cmp_a, "Preset name or config file")->required();
    cmp_cmd->add_option("b", cmp_b, "Preset name or config file")->required();
    cmp_cmd->add_option("--out", cmp_out, "Output directory");
    add_tweak_flags(*cmp_cmd, cmp_tweaks);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(RTMF_ERR_VALIDATION);
    }

    try {
        if (presets_cmd->parsed()) return cmd_presets();
        if (sim_cmd->parsed()) return cmd_simulate(sim_args, sim_out);
        if (syn_cmd->parsed()) return cmd_synthesize(syn_config, syn_out);
        return cmd_compare(cmp_a, cmp_b, cmp_tweaks, cmp_out);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(RTMF_ERROR);
    }
}
