#include "chm/util.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

namespace chm {

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t, int)>& fn) {
    const int w = std::min<std::size_t>(std::max(1, resolve_workers(workers)), std::max<std::size_t>(n, 1));
    if (w == 1 || n == 0) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    const std::size_t chunk = (n + static_cast<std::size_t>(w) - 1) / static_cast<std::size_t>(w);
    for (int t = 0; t < w; ++t) {
        const std::size_t begin = std::min(n, static_cast<std::size_t>(t) * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
    }
    for (auto& th : threads) th.join();
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace chm
