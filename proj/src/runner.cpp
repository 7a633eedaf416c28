#include "chm/runner.hpp"

#include "chm/errors.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace chm {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    return out;
}

} // namespace

int run_and_report(const RunConfig& config) {
    SystemPtr system;
    std::string source;
    try {
        if (!config.gallery.empty() && !config.system_file.empty()) {
            throw InvalidSystemError("give either a gallery name or a system file, not both");
        }
        if (!config.gallery.empty()) {
            source = config.gallery;
            system = gallery_get(config.gallery).system;
        } else if (!config.system_file.empty()) {
            source = config.system_file;
            system = parse_system_file(config.system_file);
        } else {
            throw InvalidSystemError("no input: give a gallery name or a system file");
        }
        if (config.g_max < 0) throw InvalidSystemError("g_max must be >= 0");
        if (!(config.tie_tol > 0.0) || !(config.bracket_tol > 0.0)) {
            throw InvalidSystemError("tolerances must be positive");
        }
        if (!config.svg_path.empty() && system->dim() > 2) {
            throw InvalidSystemError("SVG output supports 1D and 2D systems only; a projection of a " +
                                     std::to_string(system->dim()) + "D cloud would mislead");
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_bad_input;
    }

    const SscStatus ssc = system->ssc_status();
    const bool ssc_ok =
        ssc == SscStatus::certified || (ssc == SscStatus::inconclusive && config.allow_unverified_ssc);
    if (!ssc_ok) {
        std::cerr << "error: strong separation is " << to_string(ssc)
                  << (ssc == SscStatus::inconclusive
                          ? "; rerun with --allow-unverified-ssc to proceed anyway"
                          : "; the minimization is meaningless for touching cylinders")
                  << "\n";
        return exit_aborted;
    }

    ScheduleOptions opts;
    opts.tie_tol = config.tie_tol;
    opts.workers = config.workers;
    opts.point_budget = config.point_budget;
    opts.certify.tie_tol = config.tie_tol;
    opts.certify.bracket_tol_rel = config.bracket_tol;

    std::optional<std::ofstream> csv;
    if (!config.csv_path.empty()) {
        try {
            csv.emplace(open_or_throw(config.csv_path));
        } catch (const IoError& err) {
            std::cerr << "error: " << err.what() << "\n";
            return exit_bad_input;
        }
        write_record_csv_header(*csv);
    }
    std::optional<PointCloud> last_cloud;
    opts.on_record = [&](const DensityRecord& rec, const PointCloud& cloud) {
        if (csv) {
            write_record_csv_row(*csv, rec);
            csv->flush(); // keep partial output useful when a later generation aborts
        }
        last_cloud.emplace(cloud);
    };

    const ScheduleResult schedule = run_schedule(system, config.g_max, opts);

    ReportInputs report;
    report.source = source;
    report.system = system.get();
    report.schedule = &schedule;
    report.ssc = ssc;
    report.ssc_overridden = ssc != SscStatus::certified;
    if (config.certify_final && !schedule.records.empty()) {
        const DensityRecord& final_rec = schedule.records.back();
        try {
            report.density_interval = certified_density_interval(
                *system, final_rec.center.coords, final_rec.d_tilde,
                config.bracket_tol * system->geometry().r_up);
        } catch (const std::exception& err) {
            std::cerr << "note: density interval unavailable: " << err.what() << "\n";
        }
    }

    try {
        if (config.report_path.empty()) {
            write_report(std::cout, report);
        } else {
            auto out = open_or_throw(config.report_path);
            write_report(out, report);
        }
        if (!config.svg_path.empty() && last_cloud) {
            auto out = open_or_throw(config.svg_path);
            render_svg(out, *last_cloud, schedule.records.back());
        }
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_bad_input;
    }

    return schedule.abort_reason ? exit_aborted : exit_ok;
}

} // namespace chm
