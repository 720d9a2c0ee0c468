#include "pursuitlab/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pursuitlab {

int worker_count() {
    if (const char* env = std::getenv("PURSUIT_LAB_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // fall through to the default
        }
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

std::size_t chunk_count(std::size_t total) {
    std::size_t workers = std::size_t(worker_count());
    if (workers > total) workers = total;
    return workers == 0 ? 1 : workers;
}

void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (total == 0) return;
    std::size_t chunks = chunk_count(total);
    if (chunks <= 1) {
        fn(0, 0, total);
        return;
    }
    std::size_t base = total / chunks;
    std::size_t extra = total % chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    std::size_t begin = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t len = base + (c < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}
