#include "chm/scan.hpp"

#include "chm/errors.hpp"
#include "chm/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace chm {

namespace {

struct Candidate {
    double h = 0.0;
    std::size_t center = 0;
    double anchor_distance = 0.0;
    double cum_weight = 0.0;
    std::vector<std::size_t> witnesses; // admissible members of the tie group
};

struct CenterScratch {
    std::vector<std::pair<double, std::uint32_t>> by_dist; // (squared distance, index)
};

// Sweep one center: sort distances, group ties, accumulate weights, and
// evaluate h at admissible groups. Retains every group within (1+tie_tol) of
// the center's minimum (later filtered against the global minimum).
void scan_center(const PointCloud& cloud, std::size_t l, double s, const ScanOptions& opts,
                 double prune_above, CenterScratch& scratch, std::vector<Candidate>& out) {
    const std::size_t n = cloud.size();
    const auto& coords = cloud.coords();
    const Vec center = cloud.coord(l);
    const std::uint8_t center_first = cloud.first_symbol(l);
    const double tie = opts.tie_tol;

    auto& by_dist = scratch.by_dist;
    by_dist.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        by_dist[j] = {(coords.col(static_cast<Eigen::Index>(j)) - center).squaredNorm(),
                      static_cast<std::uint32_t>(j)};
    }
    std::sort(by_dist.begin(), by_dist.end());

    double center_min = std::numeric_limits<double>::infinity();
    std::vector<Candidate> kept;
    double cum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double d0 = std::sqrt(by_dist[i].first);
        const double d_limit = d0 + tie * std::max(1.0, d0);
        const double d2_limit = d_limit * d_limit;
        Candidate cand;
        cand.center = l;
        cand.anchor_distance = d0;
        std::size_t j = i;
        while (j < n && by_dist[j].first <= d2_limit) {
            const std::size_t idx = by_dist[j].second;
            cum += cloud.weight(idx);
            if (cloud.first_symbol(idx) != center_first) cand.witnesses.push_back(idx);
            ++j;
        }
        i = j;
        if (cand.witnesses.empty()) continue;

        const double scaled = std::pow(2.0 * d0, s);
        if (!opts.candidate_observer && scaled > prune_above) {
            // μ ≤ 1, so h ≥ (2d)^s from here on; nothing at this center can
            // reach the running global minimum anymore.
            break;
        }
        cand.cum_weight = cum;
        cand.h = scaled / cum;
        if (opts.candidate_observer) opts.candidate_observer(l, d0, cum);
        center_min = std::min(center_min, cand.h);
        if (cand.h <= center_min * (1.0 + tie)) kept.push_back(std::move(cand));
    }

    for (auto& cand : kept) {
        if (cand.h <= center_min * (1.0 + tie)) out.push_back(std::move(cand));
    }
}

std::vector<std::pair<Code, Code>> collect_pairs(const PointCloud& cloud,
                                                 const std::vector<Candidate>& winners) {
    std::set<std::pair<Code, Code>> pairs;
    for (const auto& cand : winners) {
        for (std::size_t w : cand.witnesses) {
            pairs.emplace(cloud.code(cand.center), cloud.code(w));
        }
    }
    return {pairs.begin(), pairs.end()};
}

} // namespace

DensityRecord scan_generation(const PointCloud& cloud, const ScanOptions& opts) {
    const std::size_t n = cloud.size();
    if (n < 2) throw InvalidSystemError("density scan needs at least two cloud points");
    const double s = cloud.system()->dimension();
    const double tie = opts.tie_tol;

    const int workers = resolve_workers(opts.workers);
    std::vector<std::vector<Candidate>> per_thread(static_cast<std::size_t>(std::max(workers, 1)));
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, int t) {
        CenterScratch scratch;
        auto& mine = per_thread[static_cast<std::size_t>(t)];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t l = begin; l < end; ++l) {
            std::vector<Candidate> found;
            scan_center(cloud, l, s, opts, best * (1.0 + tie), scratch, found);
            for (auto& cand : found) {
                best = std::min(best, cand.h);
                if (cand.h <= best * (1.0 + tie)) mine.push_back(std::move(cand));
            }
        }
    });

    double global_min = std::numeric_limits<double>::infinity();
    for (const auto& list : per_thread)
        for (const auto& cand : list) global_min = std::min(global_min, cand.h);

    std::vector<Candidate> winners;
    for (auto& list : per_thread)
        for (auto& cand : list)
            if (cand.h <= global_min * (1.0 + tie)) winners.push_back(std::move(cand));

    DensityRecord rec;
    rec.generation = cloud.generation();
    rec.all_minimizers = collect_pairs(cloud, winners);

    // Report the lexicographically smallest (center code, witness code) pair.
    const auto& best_pair = rec.all_minimizers.front();
    const Candidate* best_cand = nullptr;
    std::size_t witness_idx = 0;
    for (const auto& cand : winners) {
        if (cloud.code(cand.center) != best_pair.first) continue;
        for (std::size_t w : cand.witnesses) {
            if (cloud.code(w) == best_pair.second) {
                best_cand = &cand;
                witness_idx = w;
                break;
            }
        }
        if (best_cand) break;
    }
    rec.center = cloud.point(best_cand->center);
    rec.witness = cloud.point(witness_idx);
    rec.d_tilde = (rec.center.coords - rec.witness.coords).norm();
    rec.ball_discrete_measure = best_cand->cum_weight;
    rec.m_tilde = std::pow(2.0 * rec.d_tilde, s) / best_cand->cum_weight;
    return rec;
}

double ball_discrete_measure(const PointCloud& cloud, const Vec& center, double radius,
                             double tie_tol) {
    if (!(radius >= 0.0)) throw InvalidSystemError("ball measure needs radius >= 0");
    const double limit = radius + tie_tol * std::max(1.0, radius);
    const double limit2 = limit * limit;
    const auto& coords = cloud.coords();
    double sum = 0.0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
        if ((coords.col(static_cast<Eigen::Index>(j)) - center).squaredNorm() <= limit2)
            sum += cloud.weight(j);
    }
    return sum;
}

DensityRecord certify_record(DensityRecord record, const PointCloud& cloud,
                             const CertifyOptions& opts) {
    const IfSystem& sys = *cloud.system();
    const Vec center = record.center.coords;
    const double radius = record.d_tilde;
    const double inside_limit = radius + opts.tie_tol * std::max(1.0, radius);

    OracleOptions oracle{opts.tie_tol, opts.node_budget};
    std::size_t nodes_left = opts.node_budget;
    bool exact = true;
    for (std::size_t i = 0; i < cloud.size() && exact; ++i) {
        const double dist = (cloud.coord(i) - center).norm();
        const CylinderSide target =
            dist <= inside_limit ? CylinderSide::inside : CylinderSide::outside;
        const AffineMap map = AffineMap::of_code(sys, cloud.code(i));
        const CylinderSide side =
            classify_cylinder(sys, map, cloud.code(i).back(), center, radius, oracle, nodes_left);
        exact = (side == target);
    }

    record.certified = exact;
    if (exact) {
        record.certified_upper_bound = record.m_tilde;
        return record;
    }
    try {
        const double tol = opts.bracket_tol_rel * sys.geometry().r_up;
        const MeasureBracket bracket = measure_bracket(sys, center, radius, tol, oracle);
        if (bracket.lower > 0.0) {
            record.certified_upper_bound = std::pow(2.0 * radius, sys.dimension()) / bracket.lower;
        }
    } catch (const BudgetError&) {
        // No bound rather than a non-rigorous one.
    }
    return record;
}

namespace {

using PairSet = std::vector<std::pair<Code, Code>>;

PairSet canonical_pairs(const DensityRecord& rec) {
    std::set<std::pair<Code, Code>> set;
    for (const auto& [c, w] : rec.all_minimizers) set.emplace(canonical_code(c), canonical_code(w));
    return {set.begin(), set.end()};
}

} // namespace

ScheduleResult run_schedule(SystemPtr system, int g_max, const ScheduleOptions& opts) {
    ScheduleResult result;
    ScanOptions scan_opts;
    scan_opts.tie_tol = opts.tie_tol;
    scan_opts.workers = opts.workers;

    std::optional<PointCloud> cloud;
    for (int g = 0; g <= g_max; ++g) {
        try {
            cloud = g == 0 ? initial_cloud(system) : refine(*cloud, opts.point_budget);
        } catch (const BudgetError& err) {
            result.abort_reason = err.what();
            break;
        }
        DensityRecord rec = scan_generation(*cloud, scan_opts);
        rec = certify_record(std::move(rec), *cloud, opts.certify);
        if (opts.on_record) opts.on_record(rec, *cloud);
        result.records.push_back(std::move(rec));
    }

    // Walk backward: the stabilization generation is where the canonical
    // minimizer pair set last changed.
    if (!result.records.empty()) {
        int g0 = static_cast<int>(result.records.size()) - 1;
        PairSet tail = canonical_pairs(result.records.back());
        for (int g = g0 - 1; g >= 0; --g) {
            if (canonical_pairs(result.records[static_cast<std::size_t>(g)]) != tail) break;
            g0 = g;
        }
        result.stabilization_generation = g0;
    }
    return result;
}

} // namespace chm
