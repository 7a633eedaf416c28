#include "chm/cloud.hpp"

#include "chm/errors.hpp"
#include "chm/util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

namespace chm {

std::string code_to_string(const Code& code) {
    std::string s;
    s.reserve(code.size());
    for (std::uint8_t c : code) {
        if (c < 10)
            s.push_back(static_cast<char>('0' + c));
        else
            s += "[" + std::to_string(static_cast<int>(c)) + "]";
    }
    return s;
}

Code canonical_code(const Code& code) {
    Code out = code;
    while (out.size() > 1 && out[out.size() - 1] == out[out.size() - 2]) out.pop_back();
    return out;
}

PointCloud::PointCloud(SystemPtr system, int generation, Eigen::MatrixXd coords,
                       std::vector<Code> codes, std::vector<double> weights)
    : system_(std::move(system)),
      generation_(generation),
      coords_(std::move(coords)),
      codes_(std::move(codes)),
      weights_(std::move(weights)) {
    firsts_.reserve(codes_.size());
    for (const Code& c : codes_) firsts_.push_back(c.front());
}

CodedPoint PointCloud::point(std::size_t i) const {
    return CodedPoint{coord(i), codes_[i], weights_[i]};
}

PointCloud initial_cloud(SystemPtr system) {
    const int m = system->map_count();
    const int n = system->dim();
    Eigen::MatrixXd coords(n, m);
    std::vector<Code> codes;
    std::vector<double> weights;
    codes.reserve(static_cast<std::size_t>(m));
    weights.reserve(static_cast<std::size_t>(m));
    const double s = system->dimension();
    for (int i = 0; i < m; ++i) {
        coords.col(i) = system->fixed_point_of(i);
        codes.push_back(Code{static_cast<std::uint8_t>(i)});
        weights.push_back(std::pow(system->map(i).ratio(), s));
    }
    return PointCloud(std::move(system), 0, std::move(coords), std::move(codes), std::move(weights));
}

namespace {

// Exact coordinate duplicates across distinct codes contradict strong
// separation; near-duplicates within 1e-12 are treated the same way.
bool has_coincident_points(const Eigen::MatrixXd& coords) {
    const std::size_t n = static_cast<std::size_t>(coords.cols());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto dim = coords.rows();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (coords(k, static_cast<Eigen::Index>(a)) != coords(k, static_cast<Eigen::Index>(b)))
                return coords(k, static_cast<Eigen::Index>(a)) < coords(k, static_cast<Eigen::Index>(b));
        }
        return a < b;
    });
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto a = static_cast<Eigen::Index>(order[i]);
        const auto b = static_cast<Eigen::Index>(order[i + 1]);
        if ((coords.col(a) - coords.col(b)).cwiseAbs().maxCoeff() <= 1e-12) return true;
    }
    return false;
}

} // namespace

PointCloud refine(const PointCloud& cloud, std::size_t point_budget) {
    const IfSystem& sys = *cloud.system();
    const int m = sys.map_count();
    const std::size_t n_in = cloud.size();
    const std::size_t n_out = n_in * static_cast<std::size_t>(m);
    if (n_out > point_budget) {
        throw BudgetError("refinement to generation " + std::to_string(cloud.generation() + 1) +
                              " needs " + std::to_string(n_out) + " points, over the budget of " +
                              std::to_string(point_budget),
                          point_budget, n_out);
    }

    const double s = sys.dimension();
    Eigen::MatrixXd coords(cloud.dim(), static_cast<Eigen::Index>(n_out));
    std::vector<Code> codes(n_out);
    std::vector<double> weights(n_out);

    // Outer loop over the prepended symbol, inner loop in input order: the
    // input is lexicographic by code, so the output is too.
    for (int j = 0; j < m; ++j) {
        const Similitude& f = sys.map(j);
        const double wj = std::pow(f.ratio(), s);
        const Eigen::MatrixXd mapped =
            (f.ratio() * (f.orthogonal() * cloud.coords())).colwise() + f.translation();
        const std::size_t base = static_cast<std::size_t>(j) * n_in;
        coords.middleCols(static_cast<Eigen::Index>(base), static_cast<Eigen::Index>(n_in)) = mapped;
        for (std::size_t i = 0; i < n_in; ++i) {
            Code c;
            c.reserve(cloud.code(i).size() + 1);
            c.push_back(static_cast<std::uint8_t>(j));
            c.insert(c.end(), cloud.code(i).begin(), cloud.code(i).end());
            codes[base + i] = std::move(c);
            weights[base + i] = wj * cloud.weight(i);
        }
    }

    if (has_coincident_points(coords)) sys.flag_coincident_points();

    return PointCloud(cloud.system(), cloud.generation() + 1, std::move(coords), std::move(codes),
                      std::move(weights));
}

double cloud_gap(const PointCloud& cloud) {
    const IfSystem& sys = *cloud.system();
    return std::pow(sys.r_max(), cloud.generation() + 1) * sys.geometry().r_up;
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
    out << "code";
    for (int k = 1; k <= cloud.dim(); ++k) out << ",x" << k;
    out << ",weight\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << code_to_string(cloud.code(i));
        for (int k = 0; k < cloud.dim(); ++k)
            out << ',' << format_g17(cloud.coords()(k, static_cast<Eigen::Index>(i)));
        out << ',' << format_g17(cloud.weight(i)) << '\n';
    }
}

} // namespace chm
