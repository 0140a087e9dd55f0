#include "rht/threading.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rht {

namespace {
std::atomic<int> g_threads{0};

int env_threads() {
    const char* s = std::getenv("RHT_THREADS");
    if (!s) return 1;
    int v = std::atoi(s);
    return v >= 1 ? v : 1;
}
} // namespace

int thread_count() {
    int v = g_threads.load();
    return v >= 1 ? v : env_threads();
}

void set_thread_count(int n) { g_threads.store(n >= 1 ? n : 0); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

} // namespace rht
