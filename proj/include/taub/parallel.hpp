#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace taub {

/// Worker count from TAU_BOOTSTRAP_THREADS, else the hardware concurrency.
std::size_t thread_count();

/// Evaluates f(0), ..., f(n - 1) on a pool of worker threads. Results are
/// stored by index, so the output never depends on scheduling; if several
/// calls throw, the exception of the smallest index is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using Result = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<Result>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
    std::vector<Result> out;
    out.reserve(n);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

/// Pairwise summation with a fixed split topology, independent of thread count.
template <class T>
T pairwise_sum(const std::vector<T>& values, std::size_t begin, std::size_t end) {
    if (end - begin == 0) return T{};
    if (end - begin == 1) return values[begin];
    const std::size_t mid = begin + (end - begin) / 2;
    return pairwise_sum(values, begin, mid) + pairwise_sum(values, mid, end);
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
    return pairwise_sum(values, 0, values.size());
}

}  // namespace taub
