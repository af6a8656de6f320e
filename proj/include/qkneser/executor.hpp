#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qkneser {

/// Parallelism capability handed to library routines. The owner (normally
/// the CLI) decides the thread count; routines only split index ranges.
/// With threads() == 1 everything runs inline on the caller's thread.
class Executor {
public:
    explicit Executor(unsigned threads = 0)
        : threads_(threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads)
    {
    }

    unsigned threads() const noexcept { return threads_; }

    /// Calls fn(begin, end) over disjoint chunks covering [0, n). Chunks are
    /// handed out dynamically; fn must tolerate any partition.
    template <class Fn>
    void parallel_for(std::size_t n, std::size_t grain, Fn&& fn) const
    {
        if (n == 0)
            return;
        grain = std::max<std::size_t>(grain, 1);
        if (threads_ == 1 || n <= grain) {
            for (std::size_t b = 0; b < n; b += grain)
                fn(b, std::min(n, b + grain));
            return;
        }
        std::atomic<std::size_t> cursor {0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        auto worker = [&] {
            try {
                for (;;) {
                    const std::size_t b = cursor.fetch_add(grain);
                    if (b >= n)
                        break;
                    fn(b, std::min(n, b + grain));
                }
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
                cursor.store(n);
            }
        };
        const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads_, (n + grain - 1) / grain));
        std::vector<std::jthread> pool;
        pool.reserve(spawn - 1);
        for (unsigned t = 1; t < spawn; ++t)
            pool.emplace_back(worker);
        worker();
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
    }

private:
    unsigned threads_;
};

} // namespace qkneser
