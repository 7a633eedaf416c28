#include "chm/measure.hpp"

#include "chm/errors.hpp"
#include "chm/util.hpp"

#include <cmath>
#include <string>

namespace chm {

AffineMap AffineMap::then(const Similitude& g) const {
    AffineMap out;
    out.linear = linear * (g.ratio() * g.orthogonal());
    out.offset = linear * g.translation() + offset;
    out.ratio = ratio * g.ratio();
    return out;
}

AffineMap AffineMap::identity(int n) {
    return AffineMap{Mat::Identity(n, n), Vec::Zero(n), 1.0};
}

AffineMap AffineMap::of_code(const IfSystem& system, const Code& code) {
    AffineMap f = identity(system.dim());
    for (std::uint8_t c : code) f = f.then(system.map(c));
    return f;
}

namespace {

// Smallest enclosure radius at which classification gives up; genuine margins
// resolve far above this scale.
double resolution_floor(double radius) { return 1e-13 * std::max(1.0, radius); }

// Upper-bound max over E_node of psi(y) = <u, y-q> + (half_r)|y-q|^2 by slack,
// recursing while the enclosure bound is inconclusive.
bool psi_below(const IfSystem& sys, const AffineMap& node, int last, const Vec& u, const Vec& q,
               double half_r, double slack, double r_up, double floor, std::size_t& nodes_left) {
    if (nodes_left == 0) return false;
    --nodes_left;
    const Vec anchor = node(sys.fixed_point_of(last));
    const double enc = node.ratio * r_up;
    const double dist_q = (anchor - q).norm();
    const double bound = u.dot(anchor - q) + u.norm() * enc + half_r * (dist_q + enc) * (dist_q + enc);
    if (bound <= slack) return true;
    if (enc < floor) return false;
    for (int i = 0; i < sys.map_count(); ++i) {
        if (!psi_below(sys, node.then(sys.map(i)), i, u, q, half_r, slack, r_up, floor, nodes_left))
            return false;
    }
    return true;
}

} // namespace

bool tangent_cylinder_inside(const IfSystem& system, const AffineMap& map, int last_symbol,
                             const Vec& center, double radius, std::size_t& nodes_left) {
    // The reduction to first-level cylinders needs the tangent chain to keep a
    // fixed direction, i.e. the last map must be a homothety.
    if (!system.map(last_symbol).is_homothety()) return false;
    const Vec& q = system.fixed_point_of(last_symbol);
    const Vec anchor = map(q);
    const Vec v = anchor - center;
    const double dist2 = v.squaredNorm();
    const double slack = (radius * radius - dist2) / (2.0 * map.ratio);
    // u = Q^T v where linear = ratio*Q.
    const Vec u = map.linear.transpose() * v / map.ratio;
    const double r_up = system.geometry().r_up;
    const double floor = resolution_floor(radius);
    const double half_r = 0.5 * map.ratio;
    for (int i = 0; i < system.map_count(); ++i) {
        if (i == last_symbol) continue;
        AffineMap child = AffineMap::identity(system.dim()).then(system.map(i));
        if (!psi_below(system, child, i, u, q, half_r, slack, r_up, floor, nodes_left)) return false;
    }
    return true;
}

CylinderSide classify_cylinder(const IfSystem& system, const AffineMap& map, int last_symbol,
                               const Vec& center, double radius, const OracleOptions& opts,
                               std::size_t& nodes_left) {
    if (nodes_left == 0) return CylinderSide::straddle;
    --nodes_left;
    const Vec anchor = map(system.fixed_point_of(last_symbol));
    const double enc = map.ratio * system.geometry().r_up;
    const double dist = (anchor - center).norm();
    if (dist + enc <= radius) return CylinderSide::inside;
    if (dist - enc > radius) return CylinderSide::outside;
    if (std::abs(dist - radius) <= opts.tie_tol * std::max(1.0, radius) &&
        tangent_cylinder_inside(system, map, last_symbol, center, radius, nodes_left)) {
        return CylinderSide::inside;
    }
    if (enc < resolution_floor(radius)) return CylinderSide::straddle;
    CylinderSide agreed{};
    bool first = true;
    for (int i = 0; i < system.map_count(); ++i) {
        const CylinderSide side =
            classify_cylinder(system, map.then(system.map(i)), i, center, radius, opts, nodes_left);
        if (side == CylinderSide::straddle) return CylinderSide::straddle;
        if (first) {
            agreed = side;
            first = false;
        } else if (side != agreed) {
            return CylinderSide::straddle;
        }
    }
    return agreed;
}

namespace {

struct BracketWalk {
    const IfSystem& sys;
    const Vec& center;
    double radius;
    double tol;
    const OracleOptions& opts;
    double r_up;
    double s;
    CompensatedSum lower;
    CompensatedSum upper;
    std::size_t nodes = 0;
    int max_depth = 0;

    void visit(const AffineMap& map, int last, int depth) {
        if (++nodes > opts.node_budget) {
            throw BudgetError("measure bracketing exceeded the node budget of " +
                                  std::to_string(opts.node_budget) +
                                  "; raise the budget or loosen the tolerance",
                              opts.node_budget, nodes);
        }
        max_depth = std::max(max_depth, depth);
        const Vec anchor = map(sys.fixed_point_of(last));
        const double enc = map.ratio * r_up;
        const double dist = (anchor - center).norm();
        if (dist + enc <= radius) {
            const double w = std::pow(map.ratio, s);
            lower.add(w);
            upper.add(w);
            return;
        }
        if (dist - enc > radius) return;
        if (std::abs(dist - radius) <= opts.tie_tol * std::max(1.0, radius)) {
            std::size_t cert_nodes = opts.node_budget;
            if (tangent_cylinder_inside(sys, map, last, center, radius, cert_nodes)) {
                const double w = std::pow(map.ratio, s);
                lower.add(w);
                upper.add(w);
                return;
            }
        }
        if (enc < tol) {
            upper.add(std::pow(map.ratio, s));
            return;
        }
        for (int i = 0; i < sys.map_count(); ++i) visit(map.then(sys.map(i)), i, depth + 1);
    }
};

} // namespace

MeasureBracket measure_bracket(const IfSystem& system, const Vec& center, double radius, double tol,
                               const OracleOptions& opts) {
    if (!(radius >= 0.0)) throw InvalidSystemError("measure bracket needs radius >= 0");
    if (!(tol > 0.0)) throw InvalidSystemError("measure bracket needs tol > 0");
    BracketWalk walk{system, center, radius, tol, opts, system.geometry().r_up, system.dimension()};
    for (int i = 0; i < system.map_count(); ++i) {
        walk.visit(AffineMap::identity(system.dim()).then(system.map(i)), i, 1);
    }
    MeasureBracket out;
    out.upper = std::min(walk.upper.value(), 1.0);
    out.lower = std::min(walk.lower.value(), out.upper);
    out.depth_reached = walk.max_depth;
    return out;
}

std::pair<double, double> certified_density_interval(const IfSystem& system, const Vec& center,
                                                     double radius, double tol,
                                                     const OracleOptions& opts) {
    const MeasureBracket b = measure_bracket(system, center, radius, tol, opts);
    if (!(b.lower > 0.0)) {
        throw GeometryError("ball measure lower bound is zero at this resolution; "
                            "the ball misses the attractor or tol is too coarse");
    }
    const double num = std::pow(2.0 * radius, system.dimension());
    return {num / b.upper, num / b.lower};
}

} // namespace chm
