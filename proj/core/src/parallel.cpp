#include "divlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace divlab {

namespace {

int initial_threads() {
    if (const char* env = std::getenv("DIVLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::atomic<int> g_threads{0};

}  // namespace

int max_threads() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = initial_threads();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_max_threads(int n) {
    g_threads.store(n >= 1 ? n : 1, std::memory_order_relaxed);
}

std::size_t chunk_count(u64 lo0, u64 hi0, u64 chunk) {
    if (hi0 <= lo0) return 0;
    return static_cast<std::size_t>((hi0 - lo0 + chunk - 1) / chunk);
}

void for_each_chunk(u64 lo0, u64 hi0, u64 chunk,
                    const std::function<void(std::size_t, u64, u64)>& fn) {
    const std::size_t n_chunks = chunk_count(lo0, hi0, chunk);
    if (n_chunks == 0) return;

    const int workers = std::min<std::size_t>(max_threads(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            u64 lo = lo0 + c * chunk;
            u64 hi = std::min(hi0, lo + chunk);
            fn(c, lo, hi);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            u64 lo = lo0 + c * chunk;
            u64 hi = std::min(hi0, lo + chunk);
            try {
                fn(c, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace divlab
