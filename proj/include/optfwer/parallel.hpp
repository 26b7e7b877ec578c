#pragma once

#include <cstdint>
#include <functional>

namespace optfwer {

/// Worker cap for batch generation and evaluation. 0 restores the default
/// (OPTFWER_THREADS environment variable, else hardware concurrency).
void set_max_threads(int n);
[[nodiscard]] int max_threads();

/// Fixed chunk width for parallel loops. The chunk grid depends only on the
/// problem size, never on the worker count, so chunk-indexed reductions are
/// bit-stable across thread counts.
inline constexpr std::int64_t kParallelChunk = 8192;

[[nodiscard]] inline std::int64_t chunk_count(std::int64_t n) {
    return (n + kParallelChunk - 1) / kParallelChunk;
}

/// Calls fn(chunk_index, begin, end) for every chunk of [0, n), possibly from
/// several threads. fn must only touch state owned by its chunk.
void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

}  // namespace optfwer
