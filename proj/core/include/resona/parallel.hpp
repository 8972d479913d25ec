#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace resona {

// Worker count from RESONA_THREADS, else hardware concurrency.
int default_threads();

// 0 means default_threads().
int resolve_threads(int requested);

// Static block partition of [0, n). Every index is handled by exactly one
// worker and results land in per-index slots, so the output does not depend
// on the worker count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f)
{
    std::size_t nt = static_cast<std::size_t>(resolve_threads(threads));
    if (nt > n) nt = n;
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, t, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace resona
