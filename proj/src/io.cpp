#include "rtmf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rtmf/error.hpp"
#include "rtmf/linalg.hpp"

namespace rtmf {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);  // folds -0 into 0
    return buf;
}

std::string fmt_row(const Matrix& m, std::size_t i) {
    std::string out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out += ' ';
        out += fmt(m(i, j));
    }
    return out;
}

std::string fmt_matrix(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += " ; ";
        out += fmt_row(m, i);
    }
    return out;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt(v[i]);
    }
    return out;
}

nlohmann::json matrix_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json metrics_obj(const Metrics& m) {
    return {{"tracking_rms_steady", m.tracking_rms_steady},
            {"sliding_band", m.sliding_band},
            {"observer_t_conv", m.observer_t_conv},
            {"control_tv_rate", m.control_tv_rate},
            {"max_abs_u", m.max_abs_u}};
}

// DC gain of the reference model, C_r (-A_r)^-1 B_r.
Matrix model_dc_gain(const ReferenceModel& model) {
    Matrix neg_a = model.a_r * -1.0;
    return model.c_r * solve(neg_a, model.b_r);
}

// The HOSMO verdict line only makes sense when exactly one side runs each
// observer; any other pairing gets ratios without a verdict.
bool hosmo_pair(const Scenario& a, const Scenario& b) {
    return (a.observer == ObserverKind::sto && b.observer == ObserverKind::hosmo) ||
           (a.observer == ObserverKind::hosmo && b.observer == ObserverKind::sto);
}

bool hosmo_smoother(const Scenario& a, const Scenario& b, const CompareReport& rep) {
    return a.observer == ObserverKind::hosmo ? rep.tv_ratio > 1.0 : rep.tv_ratio < 1.0;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::validation, "cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            fail(ErrorKind::validation, "write failed for '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        fail(ErrorKind::validation, "cannot move temp file onto '" + path + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::validation, "cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = "t,y,y_r,e,x1,x2,xhat1,xhat2,s,u,v,w,e1,e2\n";
    out.reserve(out.size() + tr.size() * 240);
    char buf[40];
    const auto put = [&](double v, char tail) {
        std::snprintf(buf, sizeof(buf), "%.15g", v);
        out += buf;
        out += tail;
    };
    for (std::size_t i = 0; i < tr.size(); ++i) {
        put(tr.t[i], ',');
        put(tr.y[i], ',');
        put(tr.y_r[i], ',');
        put(tr.e[i], ',');
        put(tr.x1[i], ',');
        put(tr.x2[i], ',');
        put(tr.xhat1[i], ',');
        put(tr.xhat2[i], ',');
        put(tr.s[i], ',');
        put(tr.u[i], ',');
        put(tr.v[i], ',');
        put(tr.w[i], ',');
        put(tr.e1[i], ',');
        put(tr.e2[i], '\n');
    }
    return out;
}

std::string metrics_text(const Metrics& m) {
    std::ostringstream out;
    out << "tracking_rms_steady = " << fmt(m.tracking_rms_steady) << '\n'
        << "sliding_band = " << fmt(m.sliding_band) << '\n'
        << "observer_t_conv = " << fmt(m.observer_t_conv) << '\n'
        << "control_tv_rate = " << fmt(m.control_tv_rate) << '\n'
        << "max_abs_u = " << fmt(m.max_abs_u) << '\n';
    return out.str();
}

std::string metrics_json(const Metrics& m) {
    return metrics_obj(m).dump(2) + "\n";
}

std::string compare_text(const Scenario& a, const Scenario& b, const CompareReport& rep) {
    std::ostringstream out;
    out << "scenario_a = " << a.name << '\n'
        << "scenario_b = " << b.name << '\n'
        << '\n'
        << "[a]\n"
        << metrics_text(rep.a) << '\n'
        << "[b]\n"
        << metrics_text(rep.b) << '\n'
        << "[ratios b/a]\n"
        << "tracking_rms = " << fmt(rep.rms_ratio) << '\n'
        << "sliding_band = " << fmt(rep.band_ratio) << '\n'
        << "control_tv_rate = " << fmt(rep.tv_ratio) << '\n'
        << "max_abs_u = " << fmt(rep.max_u_ratio) << '\n'
        << '\n'
        << "smoother control: " << (rep.tv_ratio < 1.0 ? "b" : rep.tv_ratio > 1.0 ? "a" : "tie")
        << '\n'
        << "smaller sliding band: "
        << (rep.band_ratio < 1.0 ? "b" : rep.band_ratio > 1.0 ? "a" : "tie") << '\n';
    if (hosmo_pair(a, b))
        out << "HOSMO smoother: " << (hosmo_smoother(a, b, rep) ? "yes" : "no") << '\n';
    return out.str();
}

std::string compare_json(const Scenario& a, const Scenario& b, const CompareReport& rep) {
    nlohmann::json doc = {{"scenario_a", a.name},
                          {"scenario_b", b.name},
                          {"a", metrics_obj(rep.a)},
                          {"b", metrics_obj(rep.b)},
                          {"ratios",
                           {{"tracking_rms", rep.rms_ratio},
                            {"sliding_band", rep.band_ratio},
                            {"control_tv_rate", rep.tv_ratio},
                            {"max_abs_u", rep.max_u_ratio}}}};
    if (hosmo_pair(a, b)) doc["hosmo_smoother"] = hosmo_smoother(a, b, rep);
    return doc.dump(2) + "\n";
}

std::string synthesis_report_text(const SynthesisJob& job, const SynthesisResult& res,
                                  const SurfaceDesign& surface) {
    const std::vector<double> eig = eig_real_parts(job.model.a_r);
    const Matrix dc = model_dc_gain(job.model);
    std::ostringstream out;
    out << "plant = " << job.plant_name << " (n=" << job.plant.n() << ", m=" << job.plant.m()
        << ", p=" << job.plant.p() << ")\n"
        << "model = " << job.model_name << " (n_r=" << job.model.n_r() << ")\n"
        << "feasible = " << (res.feasibility.feasible() ? "yes" : "no") << '\n'
        << "rank = " << res.feasibility.rank << " of " << res.feasibility.required_rank
        << '\n';
    for (std::size_t i = 0; i < res.g.rows(); ++i)
        out << "g row " << i + 1 << " = " << fmt_row(res.g, i) << '\n';
    for (std::size_t i = 0; i < res.h.rows(); ++i)
        out << "h row " << i + 1 << " = " << fmt_row(res.h, i) << '\n';
    out << "surface_k = " << fmt_matrix(surface.k) << '\n'
        << "surface_poles = " << fmt_list(job.surface_poles) << '\n'
        << "residual_dyn = " << fmt(res.residual_dyn) << '\n'
        << "residual_out = " << fmt(res.residual_out) << '\n'
        << "model_eig_real_parts = " << fmt_list(eig) << '\n'
        << "model_dc_gain = " << fmt_matrix(dc) << '\n';
    return out.str();
}

std::string synthesis_report_json(const SynthesisJob& job, const SynthesisResult& res,
                                  const SurfaceDesign& surface) {
    nlohmann::json doc = {
        {"plant", job.plant_name},
        {"model", job.model_name},
        {"feasible", res.feasibility.feasible()},
        {"rank", res.feasibility.rank},
        {"required_rank", res.feasibility.required_rank},
        {"g", matrix_json(res.g)},
        {"h", matrix_json(res.h)},
        {"surface_k", matrix_json(surface.k)},
        {"surface_poles", job.surface_poles},
        {"residual_dyn", res.residual_dyn},
        {"residual_out", res.residual_out},
        {"model_eig_real_parts", eig_real_parts(job.model.a_r)},
        {"model_dc_gain", matrix_json(model_dc_gain(job.model))}};
    return doc.dump(2) + "\n";
}

}  // namespace rtmf
