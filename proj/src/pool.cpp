#include "sec/pool.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sec {

int default_workers() {
    if (const char* env = std::getenv("SEC_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void run_tasks(size_t n, int workers, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (workers < 1) workers = 1;
    const size_t threads = std::min<size_t>(workers, n);
    if (threads == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> crew;
    crew.reserve(threads);
    for (size_t t = 0; t < threads; ++t) crew.emplace_back(worker);
    for (std::thread& t : crew) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sec
