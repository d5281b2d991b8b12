#include "ergorisk/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ergorisk::detail {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("ERGORISK_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1) return std::min(requested, hw);
        } catch (const std::exception&) {
            // unparsable value: fall through to the default
        }
    }
    return hw;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
    if (n <= 0) return;
    const int workers = std::min<std::int64_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto run_range = [&](std::int64_t lo, std::int64_t hi) {
        try {
            for (std::int64_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back(run_range, lo, hi);
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ergorisk::detail
