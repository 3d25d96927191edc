#pragma once

#include <cstddef>
#include <functional>

#include "divlab/common.hpp"

namespace divlab {

// Global worker cap. Defaults to DIVLAB_THREADS env var if set, else the
// hardware concurrency. Never returns 0.
int max_threads();
void set_max_threads(int n);

// Runs fn(chunk_index, lo, hi) over [lo0, hi0) split into fixed chunks of
// `chunk` elements. Chunk boundaries depend only on (lo0, hi0, chunk), never
// on the worker count, so per-chunk results merged in chunk order are
// bit-identical for any --threads setting.
void for_each_chunk(u64 lo0, u64 hi0, u64 chunk,
                    const std::function<void(std::size_t, u64, u64)>& fn);

// Number of chunks the same partitioning produces (for preallocating
// per-chunk result slots before a for_each_chunk pass).
std::size_t chunk_count(u64 lo0, u64 hi0, u64 chunk);

}  // namespace divlab
