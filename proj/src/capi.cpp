#include "rtmf/capi.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "rtmf/config.hpp"
#include "rtmf/error.hpp"
#include "rtmf/io.hpp"
#include "rtmf/regular_form.hpp"
#include "rtmf/scenario.hpp"
#include "rtmf/simulate.hpp"
#include "rtmf/synthesis.hpp"

struct rtmf_scenario {
    rtmf::Scenario scn;
};

// Metrics use the second half of the horizon as the steady window, the same
// convention compare() applies to each side.
struct rtmf_result {
    rtmf::Trajectory tr;
    rtmf::Metrics metrics;
};

namespace {

thread_local std::string g_last_error;

rtmf_status status_of(rtmf::ErrorKind kind) {
    switch (kind) {
        case rtmf::ErrorKind::validation: return RTMF_ERR_VALIDATION;
        case rtmf::ErrorKind::infeasible: return RTMF_ERR_INFEASIBLE;
        case rtmf::ErrorKind::divergence: return RTMF_ERR_DIVERGENCE;
        case rtmf::ErrorKind::numeric: return RTMF_ERROR;
    }
    return RTMF_ERROR;
}

template <typename Fn>
rtmf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return RTMF_OK;
    } catch (const rtmf::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RTMF_ERROR;
    } catch (...) {
        g_last_error = "unidentified failure";
        return RTMF_ERROR;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) rtmf::fail(rtmf::ErrorKind::validation, what);
}

}  // namespace

extern "C" {

const char* rtmf_last_error(void) { return g_last_error.c_str(); }

void rtmf_string_free(char* s) { std::free(s); }

size_t rtmf_preset_count(void) { return rtmf::preset_names().size(); }

const char* rtmf_preset_name(size_t index) {
    // Preset list is fixed at build time; hand out stable storage.
    static const std::vector<std::string> names = rtmf::preset_names();
    if (index >= names.size()) return nullptr;
    return names[index].c_str();
}

rtmf_status rtmf_scenario_preset(const char* name, rtmf_scenario** out) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "null argument");
        auto* handle = new rtmf_scenario{rtmf::preset(name)};
        *out = handle;
    });
}

rtmf_status rtmf_scenario_from_config(const char* text, rtmf_scenario** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        auto* handle = new rtmf_scenario{rtmf::scenario_from_config(text)};
        *out = handle;
    });
}

rtmf_status rtmf_scenario_override(rtmf_scenario* s, const char* assignment) {
    return guarded([&] {
        require(s != nullptr && assignment != nullptr, "null argument");
        rtmf::apply_override(s->scn, assignment);
    });
}

rtmf_status rtmf_scenario_validate(const rtmf_scenario* s) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        s->scn.validate();
    });
}

rtmf_status rtmf_scenario_to_config(const rtmf_scenario* s, char** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        *out = dup_string(rtmf::scenario_to_config(s->scn));
    });
}

void rtmf_scenario_free(rtmf_scenario* s) { delete s; }

rtmf_status rtmf_simulate(const rtmf_scenario* s, rtmf_result** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        auto tr = rtmf::simulate(s->scn);
        auto metrics = rtmf::compute_metrics(tr, s->scn.t_end / 2.0);
        *out = new rtmf_result{std::move(tr), metrics};
    });
}

rtmf_status rtmf_result_csv(const rtmf_result* r, char** out) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        *out = dup_string(rtmf::trajectory_csv(r->tr));
    });
}

rtmf_status rtmf_result_metrics_text(const rtmf_result* r, char** out) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        *out = dup_string(rtmf::metrics_text(r->metrics));
    });
}

rtmf_status rtmf_result_metrics_json(const rtmf_result* r, char** out) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        *out = dup_string(rtmf::metrics_json(r->metrics));
    });
}

void rtmf_result_free(rtmf_result* r) { delete r; }

rtmf_status rtmf_compare(const rtmf_scenario* a, const rtmf_scenario* b,
                         char** text_out, char** json_out) {
    return guarded([&] {
        require(a != nullptr && b != nullptr, "null argument");
        require(text_out != nullptr && json_out != nullptr, "null argument");
        auto rep = rtmf::compare(a->scn, b->scn);
        std::string text = rtmf::compare_text(a->scn, b->scn, rep);
        std::string json = rtmf::compare_json(a->scn, b->scn, rep);
        *text_out = dup_string(text);
        // Second allocation can throw; release the first before rethrowing.
        try {
            *json_out = dup_string(json);
        } catch (...) {
            std::free(*text_out);
            *text_out = nullptr;
            throw;
        }
    });
}

rtmf_status rtmf_synthesize(const char* config_text, char** text_out, char** json_out) {
    return guarded([&] {
        require(text_out != nullptr && json_out != nullptr, "null argument");
        rtmf::SynthesisJob job = config_text == nullptr
                                     ? rtmf::maglev_synthesis_job()
                                     : rtmf::synthesis_job_from_config(config_text);
        rtmf::SynthesisResult res = rtmf::solve_gh(job.plant, job.model);
        rtmf::RegularForm rf = rtmf::to_regular_form(job.plant);
        rtmf::SurfaceDesign surface = rtmf::design_k(rf, job.surface_poles);
        std::string text = rtmf::synthesis_report_text(job, res, surface);
        std::string json = rtmf::synthesis_report_json(job, res, surface);
        *text_out = dup_string(text);
        try {
            *json_out = dup_string(json);
        } catch (...) {
            std::free(*text_out);
            *text_out = nullptr;
            throw;
        }
    });
}

rtmf_status rtmf_write_file(const char* path, const char* content) {
    return guarded([&] {
        require(path != nullptr && content != nullptr, "null argument");
        rtmf::write_file_atomic(path, content);
    });
}

}  // extern "C"
