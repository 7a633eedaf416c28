#pragma once

#include "chm/cloud.hpp"
#include "chm/ifs.hpp"

#include <cstddef>
#include <utility>

namespace chm {

/// Rigorous enclosure of μ(B(x,d)) for the invariant measure μ.
struct MeasureBracket {
    double lower = 0.0;
    double upper = 0.0;
    int depth_reached = 0;
    double undecided_mass() const { return upper - lower; }
};

struct OracleOptions {
    double tie_tol = 1e-12;
    std::size_t node_budget = 10'000'000;
};

/// Composition of similitudes as a single affine map x ↦ linear·x + offset,
/// with `ratio` the accumulated contraction factor (linear = ratio·Q, Q orthogonal).
struct AffineMap {
    Mat linear;
    Vec offset;
    double ratio = 1.0;

    Vec operator()(const Vec& x) const { return linear * x + offset; }
    AffineMap then(const Similitude& g) const;

    static AffineMap identity(int n);
    static AffineMap of_code(const IfSystem& system, const Code& code);
};

enum class CylinderSide { inside, outside, straddle };

/// Classify the cylinder f_code(E), given as its composed map plus the code's
/// last symbol, against the closed ball B(center, radius). Subdivides cylinders
/// whose bounding ball straddles the sphere; a cylinder whose anchor lies on
/// the sphere (within tie tolerance) is resolved by the tangency certificate
/// when possible. `nodes_left` is decremented per visited cylinder; straddle is
/// returned once it runs out.
CylinderSide classify_cylinder(const IfSystem& system, const AffineMap& map, int last_symbol,
                               const Vec& center, double radius, const OracleOptions& opts,
                               std::size_t& nodes_left);

/// Containment proof for a cylinder tangent to the sphere from inside: the
/// anchor p = map(fix_j) (j the last code symbol) sits at distance ≈ radius,
/// and f_code(E) ⊆ B̄(center, radius) reduces, when map j is a homothety, to
///   ⟨Qᵀv, y − fix_j⟩ + (r/2)·|y − fix_j|² ≤ (radius² − |v|²)/(2r)
/// for all y in E off the first-level cylinder j, where v = p − center and
/// r·Q is the composed linear part. The left side is bounded over each
/// remaining first-level cylinder by recursive enclosure; strict negativity
/// away from the tangent point makes the recursion terminate.
bool tangent_cylinder_inside(const IfSystem& system, const AffineMap& map, int last_symbol,
                             const Vec& center, double radius, std::size_t& nodes_left);

/// Adaptive cylinder subdivision. A cylinder is counted into both bounds when
/// its enclosure (or tangency certificate) places it inside the closed ball,
/// skipped when provably outside, and subdivided otherwise; once its enclosure
/// radius drops below `tol` an unresolved cylinder is counted into the upper
/// bound only. Errors when the node budget is exhausted.
MeasureBracket measure_bracket(const IfSystem& system, const Vec& center, double radius,
                               double tol, const OracleOptions& opts = {});

/// ((2d)^s/upper, (2d)^s/lower) from the measure bracket; the high end is a
/// rigorous upper bound for the centered measure when the center lies on the
/// attractor. Errors when the lower bound is zero at this resolution.
std::pair<double, double> certified_density_interval(const IfSystem& system, const Vec& center,
                                                     double radius, double tol,
                                                     const OracleOptions& opts = {});

} // namespace chm
