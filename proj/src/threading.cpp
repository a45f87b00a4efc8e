#include "dpde/threading.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dpde {

namespace {

unsigned initial_cap() {
    if (const char* env = std::getenv("DPDE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::atomic<unsigned> g_max_threads{0}; // 0 = not yet initialized

} // namespace

unsigned max_threads() {
    unsigned v = g_max_threads.load(std::memory_order_relaxed);
    if (v == 0) {
        v = initial_cap();
        g_max_threads.store(v, std::memory_order_relaxed);
    }
    return v;
}

void set_max_threads(unsigned n) { g_max_threads.store(n > 0 ? n : 1, std::memory_order_relaxed); }

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& chunk) {
    if (n == 0) {
        return;
    }
    std::size_t ways = threads <= 0 ? max_threads() : static_cast<std::size_t>(threads);
    ways = std::min(ways, n);
    if (ways <= 1) {
        chunk(0, n);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(ways - 1);
    for (std::size_t t = 1; t < ways; ++t) {
        const std::size_t begin = t * n / ways;
        const std::size_t end = (t + 1) * n / ways;
        workers.emplace_back([&chunk, begin, end] { chunk(begin, end); });
    }
    chunk(0, n / ways);
}

} // namespace dpde
