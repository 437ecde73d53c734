#include "mmgf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace mmgf {

namespace {
std::atomic<unsigned> g_threads{0};
thread_local bool t_in_parallel = false;

unsigned hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}
}  // namespace

void set_thread_count(unsigned n) {
    g_threads.store(n);
    Eigen::setNbThreads(static_cast<int>(n == 0 ? hardware_threads() : n));
}

unsigned thread_count() {
    unsigned n = g_threads.load();
    return n == 0 ? hardware_threads() : n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned workers = t_in_parallel ? 1 : std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            t_in_parallel = true;
            fn(begin, end);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mmgf
