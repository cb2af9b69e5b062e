// Deterministic chunked parallelism.
//
// Work is split into a fixed number of chunks by index arithmetic; each chunk
// is reduced sequentially and the chunk results are combined in chunk order.
// The result is therefore bitwise independent of how many threads execute the
// chunks (including the serial case).

#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace cnls {

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Reduces f over [0, count) split into `chunks` contiguous ranges.
// f(begin, end) -> T computes one chunk; combine(acc, chunk_result) folds
// results in ascending chunk order.
template <typename T, typename ChunkFn, typename CombineFn>
T chunked_reduce(std::size_t count, T init, ChunkFn&& f, CombineFn&& combine,
                 std::size_t chunks = 64) {
    if (count == 0) return init;
    if (chunks > count) chunks = count;

    std::vector<T> partial(chunks, init);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = count * c / chunks;
        const std::size_t end = count * (c + 1) / chunks;
        partial[c] = f(begin, end);
    };

    const unsigned threads = worker_count();
    if (threads <= 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunks) return;
                    run_chunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    T acc = init;
    for (std::size_t c = 0; c < chunks; ++c) acc = combine(acc, partial[c]);
    return acc;
}

}  // namespace cnls
