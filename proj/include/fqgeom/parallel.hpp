#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace fqgeom {

// Run block_fn(begin, end) on contiguous blocks of [0, n). Results must be
// written to disjoint slots (or merged sequentially by the caller) so the
// outcome is identical for every worker count.
template <class F>
void parallel_for(std::uint64_t n, int workers, F&& block_fn) {
    if (workers < 1) workers = 1;
    const std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n ? n : 1);
    if (w <= 1) {
        block_fn(std::uint64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::uint64_t chunk = (n + w - 1) / w;
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t begin = i * chunk;
        const std::uint64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&block_fn, begin, end] { block_fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace fqgeom
