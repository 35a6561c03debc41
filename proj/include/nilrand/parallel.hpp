#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nilrand {

/// Default worker count: one per hardware thread.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates trial(t) for t in [0, trials) on `workers` threads and returns
/// the results indexed by t. Trials must be independent; the output does
/// not depend on scheduling.
template <class Result, class Trial>
std::vector<Result> run_trials(std::size_t trials, unsigned workers, Trial trial) {
    std::vector<Result> results(trials);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; ++t) results[t] = trial(t);
        return results;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = w; t < trials; t += workers) results[t] = trial(t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

} // namespace nilrand
