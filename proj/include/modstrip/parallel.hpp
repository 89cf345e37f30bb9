#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace modstrip {

/// MODSTRIP_THREADS caps worker threads; defaults to the hardware count.
inline int thread_cap()
{
    if (const char* env = std::getenv("MODSTRIP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs body(0..n-1); tasks must write disjoint slots.
inline void parallel_for(int n, const std::function<void(int)>& body)
{
    const int workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                body(i);
        });
    for (auto& t : pool)
        t.join();
}

} // namespace modstrip
