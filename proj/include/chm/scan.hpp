#pragma once

#include "chm/cloud.hpp"
#include "chm/measure.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chm {

struct ScanOptions {
    /// Two distances are the same candidate when |d_a − d_b| ≤ tie_tol·max(1, d_a).
    double tie_tol = 1e-12;
    /// 0 = one thread per hardware core. Results are identical for any value.
    int workers = 0;
    /// Test hook: called as (center index, candidate distance, cumulative weight)
    /// for every admissible candidate. Setting it disables early pruning so the
    /// full candidate set is reported.
    std::function<void(std::size_t, double, double)> candidate_observer;
};

/// One generation's minimizer of the discrete inverse density
/// h_g(x, d) = (2d)^s / μ_g(B(x, d)) over admissible cloud pairs.
struct DensityRecord {
    int generation = 0;
    double m_tilde = 0.0;
    CodedPoint center;
    CodedPoint witness;
    double d_tilde = 0.0;
    double ball_discrete_measure = 0.0;
    bool certified = false;
    std::optional<double> certified_upper_bound;
    /// Every (center code, witness code) pair within 1e-12 relative of the
    /// minimum, sorted lexicographically; the reported pair is the first.
    std::vector<std::pair<Code, Code>> all_minimizers;
};

/// Per-center sorted-distance sweep with tie grouping; candidates are the
/// distances whose witness starts with a different code symbol than the center.
DensityRecord scan_generation(const PointCloud& cloud, const ScanOptions& opts = {});

/// Brute-force closed-ball weight sum: all points at distance
/// ≤ radius + tie_tol·max(1, radius). Independent oracle for the cumulative
/// sums inside scan_generation.
double ball_discrete_measure(const PointCloud& cloud, const Vec& center, double radius,
                             double tie_tol = 1e-12);

struct CertifyOptions {
    double tie_tol = 1e-12;
    /// Oracle subdivision tolerance for the fallback bound, as a fraction of R_up.
    double bracket_tol_rel = 1e-6;
    std::size_t node_budget = 10'000'000;
};

/// Decide whether every cloud cylinder lies fully on its side of the minimizing
/// ball, which makes μ_g(B) = μ(B) and m̃ a rigorous upper bound. When the test
/// fails, fall back to (2d̃)^s divided by the oracle's lower bracket of μ(B).
DensityRecord certify_record(DensityRecord record, const PointCloud& cloud,
                             const CertifyOptions& opts = {});

struct ScheduleOptions {
    double tie_tol = 1e-12;
    int workers = 0;
    std::size_t point_budget = kDefaultPointBudget;
    CertifyOptions certify;
    /// Streaming hook, invoked after each generation completes.
    std::function<void(const DensityRecord&, const PointCloud&)> on_record;
};

struct ScheduleResult {
    std::vector<DensityRecord> records;
    /// Smallest g₀ whose canonical minimizer pair set repeats through g_max —
    /// the empirical stopping signal.
    int stabilization_generation = 0;
    /// Set when a budget error stopped the run early; records hold the
    /// generations that completed.
    std::optional<std::string> abort_reason;
};

ScheduleResult run_schedule(SystemPtr system, int g_max, const ScheduleOptions& opts = {});

} // namespace chm
