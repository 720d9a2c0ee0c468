#pragma once

#include <cstddef>
#include <functional>

namespace pursuitlab {

// Worker count: PURSUIT_LAB_THREADS if set (clamped to >= 1), otherwise
// hardware concurrency.
int worker_count();

// Split [0, total) into contiguous chunks and run fn(chunk_index, begin, end)
// across workers. Chunk boundaries depend only on `total` and the worker
// count; callers keep per-chunk results and merge them in chunk order, so the
// outcome never depends on scheduling. With one worker everything runs inline.
void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Number of chunks parallel_chunks will use for `total` items.
std::size_t chunk_count(std::size_t total);

}
