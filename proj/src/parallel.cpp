#include "optfwer/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace optfwer {

namespace {

int env_threads() {
    if (const char* v = std::getenv("OPTFWER_THREADS")) {
        const int n = std::atoi(v);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::atomic<int> g_max_threads{0};

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 0); }

int max_threads() {
    const int n = g_max_threads.load();
    return n > 0 ? n : env_threads();
}

void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    const std::int64_t chunks = chunk_count(n);
    const int workers = static_cast<int>(std::min<std::int64_t>(max_threads(), chunks));

    if (workers <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) {
            const std::int64_t begin = c * kParallelChunk;
            fn(c, begin, std::min(begin + kParallelChunk, n));
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::int64_t begin = c * kParallelChunk;
            fn(c, begin, std::min(begin + kParallelChunk, n));
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace optfwer
