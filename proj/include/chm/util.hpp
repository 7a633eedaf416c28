#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace chm {

/// Kahan compensated accumulator. Subdivision sums must not drift with
/// evaluation order beyond ~1e-14, so plain += is not enough.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Resolve a worker-count setting: 0 means "auto" (hardware concurrency).
int resolve_workers(int workers);

/// Run fn(begin, end) over contiguous chunks of [0, n) on `workers` threads.
/// Chunk boundaries depend only on n and the resolved worker count.
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t, int)>& fn);

/// Format a double with 17 significant digits (round-trips binary64 exactly).
std::string format_g17(double x);

} // namespace chm
