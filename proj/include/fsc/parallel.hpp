#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fsc {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Tasks must be
/// independent; callers assemble results in fixed index order so the outcome
/// does not depend on the thread count.
inline void parallel_for(int threads, long count, const std::function<void(long)>& fn) {
    if (count <= 0) return;
    int workers = static_cast<int>(std::min<long>(std::max(threads, 1), count));
    if (workers == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto work = [&]() {
        while (true) {
            long i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fsc
