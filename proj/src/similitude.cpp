#include "chm/similitude.hpp"

#include "chm/errors.hpp"

#include <cmath>
#include <string>

namespace chm {

namespace {

void validate(double ratio, const Mat& q, const Vec& b) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) {
        throw InvalidSystemError("similitude ratio must lie strictly inside (0,1), got " +
                                 std::to_string(ratio));
    }
    if (b.size() == 0) {
        throw InvalidSystemError("similitude translation must have positive dimension");
    }
    if (q.rows() != b.size() || q.cols() != b.size()) {
        throw InvalidSystemError("orthogonal part must be a square matrix matching the translation dimension");
    }
    const Mat defect = q.transpose() * q - Mat::Identity(q.rows(), q.cols());
    const double worst = defect.cwiseAbs().maxCoeff();
    if (worst > 1e-12) {
        throw InvalidSystemError("orthogonal part fails QᵀQ = I by " + std::to_string(worst) +
                                 " (limit 1e-12 per entry)");
    }
}

// Nearest orthogonal matrix (polar factor U·Vᵀ). Removes the ≤1e-12 defect the
// constructor tolerates so that |f(x)−f(y)| = r|x−y| holds to machine precision.
Mat polar_orthogonal(const Mat& q) {
    Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

} // namespace

Similitude::Similitude(double ratio, Mat orthogonal, Vec translation)
    : ratio_(ratio), orthogonal_(std::move(orthogonal)), translation_(std::move(translation)) {
    validate(ratio_, orthogonal_, translation_);
    orthogonal_ = polar_orthogonal(orthogonal_);
}

Similitude Similitude::homothety(double ratio, Vec translation) {
    const auto n = translation.size();
    return Similitude(ratio, Mat::Identity(n, n), std::move(translation));
}

bool Similitude::is_homothety(double tol) const {
    return (orthogonal_ - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

Vec fixed_point(const Similitude& map) {
    const int n = map.dim();
    const Mat a = Mat::Identity(n, n) - map.ratio() * map.orthogonal();
    return a.partialPivLu().solve(map.translation());
}

} // namespace chm
