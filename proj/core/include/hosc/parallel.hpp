#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hosc {

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Results are
/// stored by index, so the output is independent of completion order. The
/// first exception (lowest index) is rethrown after all workers join.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int threads, Fn&& fn)
{
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const auto workers = static_cast<std::size_t>(std::max(1, threads));

    auto run_stride = [&](std::size_t first) {
        for (std::size_t i = first; i < n; i += workers) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (workers == 1 || n < 2) {
        run_stride(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(run_stride, w);
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace hosc
