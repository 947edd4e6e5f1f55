// Copyright 2026 The WarmState Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file parallel.hpp
 * Minimal fork-join loop over an index range.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace warmstate {

namespace detail {
inline std::atomic<std::size_t> &worker_setting() {
    static std::atomic<std::size_t> workers{0};
    return workers;
}
} // namespace detail

/// 0 restores the default (hardware concurrency).
inline void set_worker_count(std::size_t workers) {
    detail::worker_setting() = workers;
}

inline std::size_t worker_count() {
    const auto w = detail::worker_setting().load();
    if (w != 0) {
        return w;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/**
 * @brief Calls fn(i) for i in [0, count) across worker threads.
 *
 * Work is handed out in contiguous chunks; fn must only write to slots it
 * owns. The first exception thrown by any worker is rethrown.
 */
template <class Fn> void parallel_for(std::size_t count, Fn &&fn) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = std::max<std::size_t>(1, count / (8 * workers));
    auto body = [&] {
        try {
            for (;;) {
                const auto begin = next.fetch_add(chunk);
                if (begin >= count) {
                    return;
                }
                const auto end = std::min(count, begin + chunk);
                for (auto i = begin; i < end; ++i) {
                    fn(i);
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(body);
    }
    body();
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace warmstate
