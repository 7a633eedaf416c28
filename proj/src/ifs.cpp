#include "chm/ifs.hpp"

#include "chm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chm {

const char* to_string(SscStatus s) {
    switch (s) {
        case SscStatus::certified: return "certified";
        case SscStatus::inconclusive: return "inconclusive";
        case SscStatus::violated: return "violated";
    }
    return "?";
}

double similarity_dimension(std::span<const double> ratios) {
    if (ratios.size() < 2) {
        throw InvalidSystemError("degenerate system: need at least two maps to define a dimension");
    }
    for (double r : ratios) {
        if (!(r > 0.0) || !(r < 1.0)) {
            throw InvalidSystemError("ratio outside (0,1): " + std::to_string(r));
        }
    }
    const auto residual = [&](double s) {
        double sum = 0.0;
        for (double r : ratios) sum += std::pow(r, s);
        return sum - 1.0;
    };
    double hi = 1.0;
    while (residual(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw InvalidSystemError("similarity dimension bracket failed to close");
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double s = 0.5 * (lo + hi);
    if (std::abs(residual(s)) > 1e-12) {
        throw InvalidSystemError("similarity dimension solver residual above 1e-12");
    }
    return s;
}

namespace {

// Coordinates of the generation-`depth` cloud together with each point's first
// code symbol; enough for diameter and cross-cylinder gap estimates.
struct BareCloud {
    std::vector<Vec> coords;
    std::vector<int> first_symbol;
};

BareCloud bare_cloud(const IfSystem& sys, int depth) {
    const int m = sys.map_count();
    BareCloud c;
    for (int i = 0; i < m; ++i) {
        c.coords.push_back(sys.fixed_point_of(i));
        c.first_symbol.push_back(i);
    }
    for (int g = 0; g < depth; ++g) {
        BareCloud next;
        next.coords.reserve(c.coords.size() * static_cast<std::size_t>(m));
        next.first_symbol.reserve(next.coords.capacity());
        for (int j = 0; j < m; ++j) {
            for (const auto& p : c.coords) {
                next.coords.push_back(sys.map(j)(p));
                next.first_symbol.push_back(j);
            }
        }
        c = std::move(next);
    }
    return c;
}

int default_depth(int m, double r_max) {
    // Keep the default cloud around 2k points; go deeper if the contraction is
    // weak enough that 2·r_max^(depth+1) would not drop below 1.
    int depth = 1;
    while (depth < 8) {
        double pts = std::pow(static_cast<double>(m), depth + 2);
        if (pts > 2048.0) break;
        ++depth;
    }
    while (2.0 * std::pow(r_max, depth + 1) >= 1.0 && depth < 64) ++depth;
    return depth;
}

} // namespace

IfSystem::IfSystem(std::vector<Similitude> maps) : maps_(std::move(maps)) {
    if (maps_.size() < 2) {
        throw InvalidSystemError("degenerate system: need at least two similitudes");
    }
    dim_ = maps_.front().dim();
    for (const auto& f : maps_) {
        if (f.dim() != dim_) {
            throw InvalidSystemError("all similitudes must act on the same ambient dimension");
        }
    }
    std::vector<double> ratios;
    ratios.reserve(maps_.size());
    r_max_ = 0.0;
    for (const auto& f : maps_) {
        ratios.push_back(f.ratio());
        r_max_ = std::max(r_max_, f.ratio());
    }
    dimension_s_ = similarity_dimension(ratios);
    fixed_points_.reserve(maps_.size());
    for (const auto& f : maps_) fixed_points_.push_back(fixed_point(f));
    default_geometry_depth_ = default_depth(map_count(), r_max_);
}

const GeometryBounds& IfSystem::geometry() const {
    std::call_once(geometry_once_, [this] { geometry_ = estimate_geometry(*this, default_geometry_depth_); });
    return *geometry_;
}

SscStatus IfSystem::ssc_status() const {
    if (coincident_.load(std::memory_order_relaxed)) return SscStatus::violated;
    const GeometryBounds& g = geometry();
    if (g.c_up == 0.0) return SscStatus::violated;
    if (g.c_low > 0.0) return SscStatus::certified;
    return SscStatus::inconclusive;
}

GeometryBounds estimate_geometry(const IfSystem& system, int depth) {
    if (depth < 1) throw GeometryError("geometry estimation needs depth >= 1");
    const double h = std::pow(system.r_max(), depth + 1);
    if (2.0 * h >= 1.0) {
        throw GeometryError("depth " + std::to_string(depth) +
                            " too shallow to bracket the diameter: 2*r_max^(depth+1) = " +
                            std::to_string(2.0 * h) + " >= 1");
    }
    const BareCloud cloud = bare_cloud(system, depth);
    const std::size_t n = cloud.coords.size();

    double diam = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = (cloud.coords[i] - cloud.coords[j]).norm();
            diam = std::max(diam, d);
            if (cloud.first_symbol[i] != cloud.first_symbol[j]) gap = std::min(gap, d);
        }
    }
    if (!(diam > 0.0)) {
        throw GeometryError("attractor appears degenerate: the refinement cloud has zero diameter");
    }

    GeometryBounds b;
    b.depth_used = depth;
    b.r_low = diam;
    b.r_up = diam / (1.0 - 2.0 * h);
    b.c_up = gap;
    b.c_low = gap - 2.0 * h * b.r_up;
    return b;
}

SscStatus check_ssc(const IfSystem& system, int depth) {
    GeometryBounds b;
    try {
        b = estimate_geometry(system, depth);
    } catch (const GeometryError&) {
        return SscStatus::inconclusive;
    }
    if (b.c_up == 0.0) return SscStatus::violated;
    if (b.c_low > 0.0) return SscStatus::certified;
    return SscStatus::inconclusive;
}

} // namespace chm
