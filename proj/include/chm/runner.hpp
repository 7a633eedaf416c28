#pragma once

#include "chm/io.hpp"

#include <string>

namespace chm {

/// Exit statuses shared by the library runner and the command-line tool.
enum ExitStatus : int { exit_ok = 0, exit_aborted = 1, exit_bad_input = 2 };

struct RunConfig {
    std::string gallery;     // one of gallery_names(), or
    std::string system_file; // path to a JSON definition (exactly one of the two)
    int g_max = 6;
    double tie_tol = 1e-12;
    double bracket_tol = 1e-6; // scaled by the diameter upper bound
    std::size_t point_budget = kDefaultPointBudget;
    int workers = 0; // 0 = auto
    std::string report_path; // empty = stdout
    std::string csv_path;
    std::string svg_path;
    bool certify_final = false;      // rigorous density interval for the final ball
    bool allow_unverified_ssc = false;
};

/// Full pipeline: load, separation gate, per-generation scan + certification
/// with CSV streamed as generations complete, then report and optional SVG.
int run_and_report(const RunConfig& config);

} // namespace chm
