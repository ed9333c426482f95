#include "rtmf/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "rtmf/error.hpp"
#include "rtmf/maglev.hpp"
#include "rtmf/regular_form.hpp"

namespace rtmf {
namespace {

using Section = std::map<std::string, std::string>;
using Doc = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Doc parse_doc(const std::string& text) {
    Doc doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorKind::validation, where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                fail(ErrorKind::validation, where + ": empty section name");
            doc[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::validation, where + ": expected key = value");
        if (section.empty())
            fail(ErrorKind::validation, where + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(ErrorKind::validation, where + ": empty key");
        if (!doc[section].emplace(key, value).second)
            fail(ErrorKind::validation, where + ": duplicate key '" + key + "'");
    }
    return doc;
}

double parse_double(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        fail(ErrorKind::validation, where + ": '" + v + "' is not a number");
    return out;
}

long parse_long(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const long out = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        fail(ErrorKind::validation, where + ": '" + v + "' is not an integer");
    return out;
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(ErrorKind::validation, where + ": '" + v + "' is not a boolean");
}

std::vector<double> parse_vector(const std::string& v, const std::string& where) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok, where));
    if (out.empty()) fail(ErrorKind::validation, where + ": empty vector");
    return out;
}

Matrix parse_matrix(const std::string& v, const std::string& where) {
    std::vector<std::vector<double>> rows;
    std::string::size_type pos = 0;
    while (pos <= v.size()) {
        auto semi = v.find(';', pos);
        if (semi == std::string::npos) semi = v.size();
        rows.push_back(parse_vector(v.substr(pos, semi - pos), where));
        pos = semi + 1;
    }
    const std::size_t cols = rows.front().size();
    Matrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            fail(ErrorKind::validation, where + ": ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_vector(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt(v[i]);
    }
    return out;
}

void set_key(Scenario& s, const std::string& sec, const std::string& key,
             const std::string& value) {
    const std::string where = "config " + sec + "." + key;
    const auto bad_value = [&](const char* what) {
        fail(ErrorKind::validation, where + ": unknown " + what + " '" + value + "'");
    };
    if (sec == "scenario") {
        if (key == "name") s.name = value;
        else if (key == "plant") {
            if (!plant_kind_from_string(value, s.plant)) bad_value("plant kind");
        } else if (key == "controller") {
            if (!controller_kind_from_string(value, s.controller)) bad_value("controller");
        } else if (key == "observer") {
            if (!observer_kind_from_string(value, s.observer)) bad_value("observer");
        } else if (key == "channel") {
            if (!channel_from_string(value, s.channel)) bad_value("channel");
        } else if (key == "dt") s.dt = parse_double(value, where);
        else if (key == "t_end") s.t_end = parse_double(value, where);
        else if (key == "saturation") s.saturation = parse_bool(value, where);
        else if (key == "feed_true_states") s.feed_true_states = parse_bool(value, where);
        else if (key == "seed") s.seed = parse_long(value, where);
        else fail(ErrorKind::validation, where + ": unknown key");
    } else if (sec == "command") {
        if (key == "kind") {
            if (!command_kind_from_string(value, s.command.kind)) bad_value("command kind");
        } else if (key == "amplitude") s.command.amplitude = parse_double(value, where);
        else if (key == "period") s.command.period = parse_double(value, where);
        else if (key == "slope") s.command.slope = parse_double(value, where);
        else fail(ErrorKind::validation, where + ": unknown key");
    } else if (sec == "disturbance") {
        if (key == "kind") {
            if (!disturbance_kind_from_string(value, s.disturbance.kind))
                bad_value("disturbance kind");
        } else if (key == "amplitude") s.disturbance.amplitude = parse_double(value, where);
        else if (key == "frequency") s.disturbance.frequency = parse_double(value, where);
        else if (key == "table_t") s.disturbance.table_t = parse_vector(value, where);
        else if (key == "table_w") s.disturbance.table_w = parse_vector(value, where);
        else fail(ErrorKind::validation, where + ": unknown key");
    } else if (sec == "gains") {
        if (key == "k1") s.gains.k1 = parse_double(value, where);
        else if (key == "k2") s.gains.k2 = parse_double(value, where);
        else if (key == "lambda1") s.gains.lambda1 = parse_double(value, where);
        else if (key == "lambda2") s.gains.lambda2 = parse_double(value, where);
        else if (key == "sto_k1") s.sto_k1 = parse_double(value, where);
        else if (key == "sto_k2") s.sto_k2 = parse_double(value, where);
        else if (key == "hosmo_l1") s.hosmo_l1 = parse_double(value, where);
        else if (key == "hosmo_l2") s.hosmo_l2 = parse_double(value, where);
        else if (key == "hosmo_l3") s.hosmo_l3 = parse_double(value, where);
        else fail(ErrorKind::validation, where + ": unknown key");
    } else if (sec == "init") {
        if (key == "x0_plant") s.x0_plant = Vector(parse_vector(value, where));
        else if (key == "x_r0") s.x_r0 = Vector(parse_vector(value, where));
        else fail(ErrorKind::validation, where + ": unknown key");
    } else {
        fail(ErrorKind::validation, "config: unknown section [" + sec + "]");
    }
}

}  // namespace

Scenario scenario_from_config(const std::string& text) {
    Scenario s;
    const Doc doc = parse_doc(text);
    for (const auto& [sec, kv] : doc)
        for (const auto& [key, value] : kv) set_key(s, sec, key, value);
    s.validate();
    return s;
}

std::string scenario_to_config(const Scenario& s) {
    std::ostringstream out;
    out << "[scenario]\n"
        << "name = " << s.name << '\n'
        << "plant = " << to_string(s.plant) << '\n'
        << "controller = " << to_string(s.controller) << '\n'
        << "observer = " << to_string(s.observer) << '\n'
        << "channel = " << to_string(s.channel) << '\n'
        << "dt = " << fmt(s.dt) << '\n'
        << "t_end = " << fmt(s.t_end) << '\n'
        << "saturation = " << (s.saturation ? "true" : "false") << '\n'
        << "feed_true_states = " << (s.feed_true_states ? "true" : "false") << '\n'
        << "seed = " << s.seed << '\n'
        << '\n'
        << "[command]\n"
        << "kind = " << to_string(s.command.kind) << '\n'
        << "amplitude = " << fmt(s.command.amplitude) << '\n'
        << "period = " << fmt(s.command.period) << '\n'
        << "slope = " << fmt(s.command.slope) << '\n'
        << '\n'
        << "[disturbance]\n"
        << "kind = " << to_string(s.disturbance.kind) << '\n'
        << "amplitude = " << fmt(s.disturbance.amplitude) << '\n'
        << "frequency = " << fmt(s.disturbance.frequency) << '\n';
    if (!s.disturbance.table_t.empty())
        out << "table_t = " << fmt_vector(s.disturbance.table_t) << '\n'
            << "table_w = " << fmt_vector(s.disturbance.table_w) << '\n';
    out << '\n'
        << "[gains]\n"
        << "k1 = " << fmt(s.gains.k1) << '\n'
        << "k2 = " << fmt(s.gains.k2) << '\n'
        << "lambda1 = " << fmt(s.gains.lambda1) << '\n'
        << "lambda2 = " << fmt(s.gains.lambda2) << '\n'
        << "sto_k1 = " << fmt(s.sto_k1) << '\n'
        << "sto_k2 = " << fmt(s.sto_k2) << '\n'
        << "hosmo_l1 = " << fmt(s.hosmo_l1) << '\n'
        << "hosmo_l2 = " << fmt(s.hosmo_l2) << '\n'
        << "hosmo_l3 = " << fmt(s.hosmo_l3) << '\n'
        << '\n'
        << "[init]\n"
        << "x0_plant = " << fmt_vector(s.x0_plant.data()) << '\n'
        << "x_r0 = " << fmt_vector(s.x_r0.data()) << '\n';
    return out.str();
}

void apply_override(Scenario& s, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        fail(ErrorKind::validation,
             "override '" + assignment + "': expected section.key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        fail(ErrorKind::validation,
             "override '" + assignment + "': expected a dotted path like gains.lambda1");
    set_key(s, path.substr(0, dot), path.substr(dot + 1), value);
}

SynthesisJob maglev_synthesis_job() {
    SynthesisJob job;
    job.plant = maglev::linear_plant();
    job.model = maglev::reference_model();
    job.surface_poles = default_surface_poles(job.plant.n() - job.plant.m());
    return job;
}

SynthesisJob synthesis_job_from_config(const std::string& text) {
    const Doc doc = parse_doc(text);
    SynthesisJob job;
    std::vector<double> poles;

    const auto syn = doc.find("synthesis");
    if (syn != doc.end()) {
        for (const auto& [key, value] : syn->second) {
            const std::string where = "config synthesis." + key;
            if (key == "plant") job.plant_name = value;
            else if (key == "model") job.model_name = value;
            else if (key == "poles") poles = parse_vector(value, where);
            else fail(ErrorKind::validation, where + ": unknown key");
        }
    }

    if (job.plant_name == "maglev") {
        if (doc.count("plant"))
            fail(ErrorKind::validation,
                 "config: [plant] section given but synthesis.plant is 'maglev'");
        job.plant = maglev::linear_plant();
    } else if (job.plant_name == "custom") {
        const auto it = doc.find("plant");
        if (it == doc.end())
            fail(ErrorKind::validation, "config: synthesis.plant = custom needs a [plant] section");
        bool has_a = false, has_b = false, has_c = false;
        for (const auto& [key, value] : it->second) {
            const std::string where = "config plant." + key;
            if (key == "a") { job.plant.a = parse_matrix(value, where); has_a = true; }
            else if (key == "b") { job.plant.b = parse_matrix(value, where); has_b = true; }
            else if (key == "c") { job.plant.c = parse_matrix(value, where); has_c = true; }
            else if (key == "theta_m") job.plant.theta_m = parse_double(value, where);
            else if (key == "theta_dot_m") job.plant.theta_dot_m = parse_double(value, where);
            else fail(ErrorKind::validation, where + ": unknown key");
        }
        if (!has_a || !has_b || !has_c)
            fail(ErrorKind::validation, "config [plant]: a, b and c are all required");
    } else {
        fail(ErrorKind::validation,
             "config synthesis.plant: unknown source '" + job.plant_name + "'");
    }

    if (job.model_name == "maglev") {
        if (doc.count("model"))
            fail(ErrorKind::validation,
                 "config: [model] section given but synthesis.model is 'maglev'");
        job.model = maglev::reference_model();
    } else if (job.model_name == "pid") {
        const auto it = doc.find("model");
        if (it == doc.end())
            fail(ErrorKind::validation, "config: synthesis.model = pid needs a [model] section");
        double kp = 0, ki = 0, kd = 0;
        bool full_numerator = false;
        bool has_p = false, has_i = false, has_d = false;
        for (const auto& [key, value] : it->second) {
            const std::string where = "config model." + key;
            if (key == "kp") { kp = parse_double(value, where); has_p = true; }
            else if (key == "ki") { ki = parse_double(value, where); has_i = true; }
            else if (key == "kd") { kd = parse_double(value, where); has_d = true; }
            else if (key == "full_numerator") full_numerator = parse_bool(value, where);
            else fail(ErrorKind::validation, where + ": unknown key");
        }
        if (!has_p || !has_i || !has_d)
            fail(ErrorKind::validation, "config [model]: kp, ki and kd are all required");
        job.model = maglev::pid_to_model(kp, ki, kd, maglev::kInputGain,
                                         maglev::kStiffness, full_numerator);
    } else if (job.model_name == "custom") {
        const auto it = doc.find("model");
        if (it == doc.end())
            fail(ErrorKind::validation,
                 "config: synthesis.model = custom needs a [model] section");
        bool has_a = false, has_b = false, has_c = false;
        for (const auto& [key, value] : it->second) {
            const std::string where = "config model." + key;
            if (key == "a_r") { job.model.a_r = parse_matrix(value, where); has_a = true; }
            else if (key == "b_r") { job.model.b_r = parse_matrix(value, where); has_b = true; }
            else if (key == "c_r") { job.model.c_r = parse_matrix(value, where); has_c = true; }
            else if (key == "x_r0") job.model.x_r0 = Vector(parse_vector(value, where));
            else fail(ErrorKind::validation, where + ": unknown key");
        }
        if (!has_a || !has_b || !has_c)
            fail(ErrorKind::validation, "config [model]: a_r, b_r and c_r are all required");
        if (job.model.x_r0.empty()) job.model.x_r0 = Vector(job.model.n_r());
    } else {
        fail(ErrorKind::validation,
             "config synthesis.model: unknown source '" + job.model_name + "'");
    }

    for (const auto& [sec, kv] : doc) {
        (void)kv;
        if (sec != "synthesis" && sec != "plant" && sec != "model")
            fail(ErrorKind::validation, "config: unknown section [" + sec + "]");
    }

    job.plant.validate();
    job.model.validate();
    const std::size_t want = job.plant.n() - job.plant.m();
    if (poles.empty()) poles = default_surface_poles(want);
    if (poles.size() != want)
        fail(ErrorKind::validation,
             "config synthesis.poles: expected " + std::to_string(want) +
                 " surface poles, got " + std::to_string(poles.size()));
    job.surface_poles = poles;
    return job;
}

}  // namespace rtmf
