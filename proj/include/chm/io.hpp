#pragma once

#include "chm/gallery.hpp"
#include "chm/scan.hpp"

#include <iosfwd>
#include <string>

namespace chm {

/// Load a system definition from UTF-8 JSON:
///   { "dimension": n,
///     "maps": [ { "ratio": r, "orthogonal": [[...]...], "translation": [...] }, ... ] }
/// "orthogonal" is optional and defaults to the identity. Validation failures
/// cite the offending key path.
SystemPtr parse_system_file(const std::string& path);
SystemPtr parse_system_json(const std::string& text);

void write_record_csv_header(std::ostream& out);
void write_record_csv_row(std::ostream& out, const DensityRecord& record);

struct ReportInputs {
    std::string source;
    const IfSystem* system = nullptr;
    const ScheduleResult* schedule = nullptr;
    SscStatus ssc = SscStatus::inconclusive;
    bool ssc_overridden = false;
    /// Filled when a rigorous density interval was requested for the final ball.
    std::optional<std::pair<double, double>> density_interval;
};

void write_report(std::ostream& out, const ReportInputs& inputs);

/// Cloud points as dots with area proportional to weight, the minimizing ball,
/// and the center/witness pair highlighted. Only 1D and 2D systems.
void render_svg(std::ostream& out, const PointCloud& cloud, const DensityRecord& record);

} // namespace chm
