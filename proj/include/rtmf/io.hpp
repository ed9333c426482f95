#pragma once

#include <string>

#include "rtmf/config.hpp"
#include "rtmf/regular_form.hpp"
#include "rtmf/simulate.hpp"
#include "rtmf/synthesis.hpp"

namespace rtmf {

// Writes through a temp file in the target directory plus rename, so readers
// never observe a partial file and failures leave nothing behind.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Trajectory CSV: fixed header, one sample per step, 15 significant digits.
std::string trajectory_csv(const Trajectory& tr);

std::string metrics_text(const Metrics& m);
std::string metrics_json(const Metrics& m);

std::string compare_text(const Scenario& a, const Scenario& b, const CompareReport& rep);
std::string compare_json(const Scenario& a, const Scenario& b, const CompareReport& rep);

// Synthesis report: feasibility, G/H/K, residuals, model eigenvalue audit.
std::string synthesis_report_text(const SynthesisJob& job, const SynthesisResult& res,
                                  const SurfaceDesign& surface);
std::string synthesis_report_json(const SynthesisJob& job, const SynthesisResult& res,
                                  const SurfaceDesign& surface);

}  // namespace rtmf
