// Copyright 2026 The qtedopa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qtedopa {

namespace detail {
inline std::atomic<std::size_t> &thread_setting() {
    static std::atomic<std::size_t> n{1};
    return n;
}
} // namespace detail

/// Worker threads for amplitude loops. 0 selects the hardware concurrency.
inline void set_thread_count(std::size_t n) {
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    detail::thread_setting().store(n);
}

[[nodiscard]] inline std::size_t thread_count() { return detail::thread_setting().load(); }

/// Calls fn(lo, hi) over disjoint chunks of [0, n). Chunks never share an
/// output index, so results do not depend on the thread count.
template <typename F>
void parallel_for(std::size_t n, F &&fn) {
    constexpr std::size_t min_chunk = std::size_t{1} << 14;
    const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(1, n / min_chunk));
    if (threads <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 1; t < threads; ++t) {
        const std::size_t lo = std::min(n, t * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    fn(std::size_t{0}, std::min(n, chunk));
}

} // namespace qtedopa
