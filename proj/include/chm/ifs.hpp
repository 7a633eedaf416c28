#pragma once

#include "chm/similitude.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace chm {

/// Rigorous two-sided brackets for the attractor diameter R = |E| and the
/// first-level separation gap c = min_{i≠j} dist(f_i E, f_j E), from a finite
/// refinement: every point of E lies within r_max^(depth+1)·|E| of the
/// generation-`depth` cloud.
struct GeometryBounds {
    double r_low = 0.0;
    double r_up = 0.0;
    double c_low = 0.0;
    double c_up = 0.0;
    int depth_used = 0;
};

enum class SscStatus { certified, inconclusive, violated };

const char* to_string(SscStatus s);

/// A validated iterated function system of similitudes, with the similarity
/// dimension s solved at construction and geometry brackets cached on first use.
/// Immutable and safely shareable across threads.
class IfSystem {
public:
    explicit IfSystem(std::vector<Similitude> maps);

    int dim() const { return dim_; }
    int map_count() const { return static_cast<int>(maps_.size()); }
    const Similitude& map(int i) const { return maps_[static_cast<std::size_t>(i)]; }
    const std::vector<Similitude>& maps() const { return maps_; }
    const Vec& fixed_point_of(int i) const { return fixed_points_[static_cast<std::size_t>(i)]; }

    /// Similarity dimension: the unique s ≥ 0 with Σ ratio_i^s = 1.
    double dimension() const { return dimension_s_; }
    double r_max() const { return r_max_; }

    /// Brackets at the default depth, computed once on first call.
    const GeometryBounds& geometry() const;
    SscStatus ssc_status() const;

    /// Point clouds call this when two codes land on coincident coordinates,
    /// which contradicts strong separation.
    void flag_coincident_points() const { coincident_.store(true, std::memory_order_relaxed); }

private:
    std::vector<Similitude> maps_;
    std::vector<Vec> fixed_points_;
    int dim_;
    double dimension_s_;
    double r_max_;
    int default_geometry_depth_;

    mutable std::once_flag geometry_once_;
    mutable std::optional<GeometryBounds> geometry_;
    mutable std::atomic<bool> coincident_{false};
};

using SystemPtr = std::shared_ptr<const IfSystem>;

/// Solve Σ r_i^s = 1 by bisection on the strictly decreasing map s ↦ Σ r_i^s.
/// Rejects fewer than two ratios (the attractor would be a single point).
double similarity_dimension(std::span<const double> ratios);

GeometryBounds estimate_geometry(const IfSystem& system, int depth);

/// Sufficient numeric separation test from the generation-`depth` cloud:
/// certified when the gap lower bound is positive, violated when two points of
/// distinct first-level cylinders coincide exactly, inconclusive otherwise.
SscStatus check_ssc(const IfSystem& system, int depth);

} // namespace chm
