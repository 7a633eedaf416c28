#pragma once

#include <Eigen/Dense>

namespace chm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One contracting similitude f(x) = r·Q·x + b with 0 < r < 1 and Q orthogonal.
///
/// Q is accepted with an orthogonality defect up to 1e-12 per entry (hand-entered
/// rotation matrices carry rounding) and snapped to its polar orthogonal factor.
class Similitude {
public:
    Similitude(double ratio, Mat orthogonal, Vec translation);

    /// f(x) = r·x + b (identity orthogonal part).
    static Similitude homothety(double ratio, Vec translation);

    double ratio() const { return ratio_; }
    const Mat& orthogonal() const { return orthogonal_; }
    const Vec& translation() const { return translation_; }
    int dim() const { return static_cast<int>(translation_.size()); }

    Vec operator()(const Vec& x) const { return ratio_ * (orthogonal_ * x) + translation_; }

    /// True when the orthogonal part is the identity within `tol` per entry.
    bool is_homothety(double tol = 1e-12) const;

private:
    double ratio_;
    Mat orthogonal_;
    Vec translation_;
};

/// The unique x* with f(x*) = x*, from the linear system (I − rQ)x = b.
Vec fixed_point(const Similitude& map);

} // namespace chm
