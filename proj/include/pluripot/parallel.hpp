#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pluripot {

/// Run fn(0), ..., fn(count-1) across a small thread pool.  threads == 0
/// picks the hardware count.  fn must not throw (wrap and record instead);
/// results must be written to caller-owned slots so ordering stays
/// deterministic regardless of scheduling.
inline void parallel_for(std::size_t count, std::size_t threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t nt = threads ? threads : std::thread::hardware_concurrency();
    if (nt == 0) nt = 1;
    nt = std::min(nt, count);
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace pluripot
