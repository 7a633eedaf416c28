#include "chm/io.hpp"

#include "chm/errors.hpp"
#include "chm/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace chm {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw InvalidSystemError(path + ": expected a number");
    return j.get<double>();
}

Vec require_vector(const json& j, Eigen::Index n, const std::string& path) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
        throw InvalidSystemError(path + ": expected an array of " + std::to_string(n) + " numbers");
    }
    Vec v(n);
    for (Eigen::Index k = 0; k < n; ++k)
        v(k) = require_number(j[static_cast<std::size_t>(k)], path + "[" + std::to_string(k) + "]");
    return v;
}

Mat require_matrix(const json& j, Eigen::Index n, const std::string& path) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
        throw InvalidSystemError(path + ": expected an " + std::to_string(n) + "x" +
                                 std::to_string(n) + " array");
    }
    Mat m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        m.row(r) = require_vector(j[static_cast<std::size_t>(r)], n, path + "[" + std::to_string(r) + "]")
                       .transpose();
    return m;
}

} // namespace

SystemPtr parse_system_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw InvalidSystemError(std::string("malformed JSON: ") + err.what());
    }
    if (!root.is_object()) throw InvalidSystemError("top level: expected an object");
    if (!root.contains("dimension")) throw InvalidSystemError("dimension: missing");
    if (!root["dimension"].is_number_integer() || root["dimension"].get<int>() < 1) {
        throw InvalidSystemError("dimension: expected a positive integer");
    }
    const Eigen::Index n = root["dimension"].get<Eigen::Index>();
    if (!root.contains("maps") || !root["maps"].is_array()) {
        throw InvalidSystemError("maps: expected an array");
    }

    std::vector<Similitude> maps;
    for (std::size_t i = 0; i < root["maps"].size(); ++i) {
        const json& jm = root["maps"][i];
        const std::string path = "maps[" + std::to_string(i) + "]";
        if (!jm.is_object()) throw InvalidSystemError(path + ": expected an object");
        if (!jm.contains("ratio")) throw InvalidSystemError(path + ".ratio: missing");
        const double ratio = require_number(jm["ratio"], path + ".ratio");
        if (!(ratio > 0.0) || !(ratio < 1.0)) {
            throw InvalidSystemError(path + ".ratio: must lie strictly inside (0,1)");
        }
        if (!jm.contains("translation")) throw InvalidSystemError(path + ".translation: missing");
        const Vec b = require_vector(jm["translation"], n, path + ".translation");
        Mat q = Mat::Identity(n, n);
        if (jm.contains("orthogonal")) q = require_matrix(jm["orthogonal"], n, path + ".orthogonal");
        try {
            maps.emplace_back(ratio, std::move(q), b);
        } catch (const InvalidSystemError& err) {
            throw InvalidSystemError(path + ": " + err.what());
        }
    }
    try {
        return std::make_shared<const IfSystem>(std::move(maps));
    } catch (const InvalidSystemError& err) {
        throw InvalidSystemError(std::string("maps: ") + err.what());
    }
}

SystemPtr parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open system file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system_json(buf.str());
}

void write_record_csv_header(std::ostream& out) {
    out << "generation,m_tilde,d_tilde,center_code,witness_code,ball_measure,certified,upper_bound\n";
}

void write_record_csv_row(std::ostream& out, const DensityRecord& r) {
    out << r.generation << ',' << format_g17(r.m_tilde) << ',' << format_g17(r.d_tilde) << ','
        << code_to_string(r.center.code) << ',' << code_to_string(r.witness.code) << ','
        << format_g17(r.ball_discrete_measure) << ',' << (r.certified ? "true" : "false") << ',';
    if (r.certified_upper_bound) out << format_g17(*r.certified_upper_bound);
    out << '\n';
}

namespace {

std::string short_value(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

void write_report(std::ostream& out, const ReportInputs& in) {
    const IfSystem& sys = *in.system;
    const GeometryBounds& g = sys.geometry();
    out << "source: " << in.source << "\n";
    out << "ambient dimension: " << sys.dim() << ", maps: " << sys.map_count() << "\n";
    out << "similarity dimension s = " << format_g17(sys.dimension()) << "\n";
    out << "diameter bracket [" << format_g17(g.r_low) << ", " << format_g17(g.r_up)
        << "] (depth " << g.depth_used << ")\n";
    out << "separation bracket [" << format_g17(g.c_low) << ", " << format_g17(g.c_up) << "]\n";
    out << "separation status: " << to_string(in.ssc) << (in.ssc_overridden ? " (override)" : "")
        << "\n\n";

    out << std::left << std::setw(5) << "g" << std::setw(12) << "m_tilde" << std::setw(12)
        << "d_tilde" << std::setw(14) << "ball_measure" << std::setw(11) << "certified"
        << std::setw(13) << "upper_bound" << "minimizer\n";
    for (const auto& r : in.schedule->records) {
        out << std::left << std::setw(5) << r.generation << std::setw(12) << short_value(r.m_tilde)
            << std::setw(12) << short_value(r.d_tilde) << std::setw(14)
            << short_value(r.ball_discrete_measure) << std::setw(11) << (r.certified ? "yes" : "no")
            << std::setw(13)
            << (r.certified_upper_bound ? short_value(*r.certified_upper_bound) : std::string("-"))
            << "(" << code_to_string(r.center.code) << ", " << code_to_string(r.witness.code) << ")";
        if (r.all_minimizers.size() > 1) out << " +" << r.all_minimizers.size() - 1 << " tied";
        out << "\n";
    }
    out << "\n";

    if (!in.schedule->records.empty()) {
        const auto& recs = in.schedule->records;
        const int g0 = in.schedule->stabilization_generation;
        out << "m_tilde stabilized at generation " << g0 << ", value "
            << short_value(recs[static_cast<std::size_t>(g0)].m_tilde) << "\n";

        const DensityRecord* best = nullptr;
        for (const auto& r : recs) {
            if (!r.certified_upper_bound) continue;
            if (!best || *r.certified_upper_bound < *best->certified_upper_bound) best = &r;
        }
        if (best) {
            out << "best certified upper bound: " << format_g17(*best->certified_upper_bound)
                << " (generation " << best->generation << ")\n";
        }
    }
    if (in.density_interval) {
        out << "rigorous density interval for the final ball: ["
            << format_g17(in.density_interval->first) << ", "
            << format_g17(in.density_interval->second) << "]\n";
    }
    if (in.schedule->abort_reason) {
        out << "run aborted: " << *in.schedule->abort_reason << "\n";
    }
}

void render_svg(std::ostream& out, const PointCloud& cloud, const DensityRecord& record) {
    const int n = cloud.dim();
    if (n > 2) throw IoError("SVG rendering supports 1D and 2D systems only");

    const auto& coords = cloud.coords();
    const double pad = record.d_tilde;
    double x_min = coords.row(0).minCoeff() - pad;
    double x_max = coords.row(0).maxCoeff() + pad;
    double y_min = (n == 2 ? coords.row(1).minCoeff() : 0.0) - pad;
    double y_max = (n == 2 ? coords.row(1).maxCoeff() : 0.0) + pad;

    const double width = 800.0;
    const double scale = width / (x_max - x_min);
    const double height = std::max(40.0, (y_max - y_min) * scale);
    const auto px = [&](double x) { return (x - x_min) * scale; };
    const auto py = [&](double y) { return height - (y - y_min) * scale; };
    const auto wx = [&](std::size_t i) { return coords(0, static_cast<Eigen::Index>(i)); };
    const auto wy = [&](std::size_t i) {
        return n == 2 ? coords(1, static_cast<Eigen::Index>(i)) : 0.0;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (n == 1) {
        out << "<line x1=\"0\" y1=\"" << py(0.0) << "\" x2=\"" << width << "\" y2=\"" << py(0.0)
            << "\" stroke=\"#ccc\"/>\n";
    }

    // Minimizing ball.
    const double cx = record.center.coords(0);
    const double cy = n == 2 ? record.center.coords(1) : 0.0;
    out << "<circle cx=\"" << px(cx) << "\" cy=\"" << py(cy) << "\" r=\"" << record.d_tilde * scale
        << "\" fill=\"#4a90d922\" stroke=\"#4a90d9\" stroke-width=\"1.5\"/>\n";

    double w_max = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) w_max = std::max(w_max, cloud.weight(i));
    const double r_base = std::clamp(width / (3.0 * std::sqrt(double(cloud.size()))), 1.0, 8.0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double r = r_base * std::sqrt(cloud.weight(i) / w_max);
        out << "<circle cx=\"" << px(wx(i)) << "\" cy=\"" << py(wy(i)) << "\" r=\"" << r
            << "\" fill=\"#333\"/>\n";
    }

    const double wxw = record.witness.coords(0);
    const double wyw = n == 2 ? record.witness.coords(1) : 0.0;
    out << "<circle cx=\"" << px(cx) << "\" cy=\"" << py(cy)
        << "\" r=\"5\" fill=\"none\" stroke=\"#d0021b\" stroke-width=\"2\"/>\n";
    out << "<circle cx=\"" << px(wxw) << "\" cy=\"" << py(wyw)
        << "\" r=\"5\" fill=\"none\" stroke=\"#f5a623\" stroke-width=\"2\"/>\n";
    out << "</svg>\n";
}

} // namespace chm
