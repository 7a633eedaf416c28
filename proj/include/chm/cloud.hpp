#pragma once

#include "chm/ifs.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chm {

/// Symbolic address of a cloud point: the last symbol names the fixed point it
/// descends from, the preceding symbols name the maps applied, outermost first.
using Code = std::vector<std::uint8_t>;

std::string code_to_string(const Code& code);

/// Drop trailing repeats of the final symbol: f_j(fix_j) = fix_j, so codes
/// ending in a constant run address the same point at every generation.
Code canonical_code(const Code& code);

struct CodedPoint {
    Vec coords;
    Code code;
    double weight = 0.0;
};

constexpr std::size_t kDefaultPointBudget = 2'000'000;

/// The generation-g refinement A_g with its discrete probability measure:
/// m^(g+1) points, one per code of length g+1, point weight r_code^s.
/// Points are ordered lexicographically by code. Immutable after construction.
class PointCloud {
public:
    PointCloud(SystemPtr system, int generation, Eigen::MatrixXd coords,
               std::vector<Code> codes, std::vector<double> weights);

    const SystemPtr& system() const { return system_; }
    int generation() const { return generation_; }
    int dim() const { return static_cast<int>(coords_.rows()); }
    std::size_t size() const { return codes_.size(); }

    /// n × size matrix; column i holds the coordinates of point i.
    const Eigen::MatrixXd& coords() const { return coords_; }
    Vec coord(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }
    const Code& code(std::size_t i) const { return codes_[i]; }
    std::uint8_t first_symbol(std::size_t i) const { return firsts_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    CodedPoint point(std::size_t i) const;

private:
    SystemPtr system_;
    int generation_;
    Eigen::MatrixXd coords_;
    std::vector<Code> codes_;
    std::vector<std::uint8_t> firsts_;
    std::vector<double> weights_;
};

/// Generation 0: the fixed points, point i carrying code (i) and weight ratio_i^s.
PointCloud initial_cloud(SystemPtr system);

/// One refinement step: every map applied to every point, codes prepended,
/// weights scaled by ratio^s. Exceeding `point_budget` is an error, never a
/// silent truncation. Coincident output coordinates downgrade the system's
/// separation status to violated.
PointCloud refine(const PointCloud& cloud, std::size_t point_budget = kDefaultPointBudget);

/// Upper bound r_max^(g+1)·R_up on the Hausdorff distance between A_g and E.
double cloud_gap(const PointCloud& cloud);

/// Columns: code, x1..xn, weight; 17 significant digits.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);

} // namespace chm
