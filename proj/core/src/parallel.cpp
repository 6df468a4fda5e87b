#include "logbesov/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace logbesov {

namespace {

std::atomic<int> g_threads{0};

int env_threads() {
    const char* v = std::getenv("LOGBESOV_THREADS");
    if (v == nullptr) return 1;
    try {
        int n = std::stoi(v);
        return n > 0 ? n : 1;
    } catch (...) {
        return 1;
    }
}

}  // namespace

int thread_count() {
    int n = g_threads.load();
    if (n <= 0) {
        n = env_threads();
        g_threads.store(n);
    }
    return n;
}

void set_threads(int n) { g_threads.store(n > 0 ? n : env_threads()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_grain) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1 || n < min_grain) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(0, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace logbesov
