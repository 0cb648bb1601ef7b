#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace interdep {

namespace detail {
inline std::atomic<int>& thread_count_storage() {
    static std::atomic<int> count{0};
    return count;
}
}  // namespace detail

// Worker-thread count used by parallel loops. 0 means "hardware".
// Results never depend on this value: work is partitioned into fixed
// blocks and reduced in block order.
inline void set_thread_count(int n) { detail::thread_count_storage() = n < 0 ? 0 : n; }

inline int thread_count() {
    const int configured = detail::thread_count_storage().load();
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_index) for block_index in [0, num_blocks) on a pool of
// worker threads. Blocks are claimed dynamically; fn must only write to
// per-block state.
inline void parallel_for_blocks(std::size_t num_blocks,
                                const std::function<void(std::size_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || num_blocks <= 1) {
        for (std::size_t b = 0; b < num_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= num_blocks) break;
            fn(b);
        }
    };
    const std::size_t spawn =
        std::min<std::size_t>(static_cast<std::size_t>(workers), num_blocks);
    std::vector<std::thread> pool;
    pool.reserve(spawn - 1);
    for (std::size_t i = 1; i < spawn; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace interdep
