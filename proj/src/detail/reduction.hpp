// Copyright 2026 The speclocc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Trial fan-out with deterministic fan-in: per-trial values land in a
// buffer indexed by trial, and sums are taken by a fixed pairwise tree, so
// results do not depend on thread count or scheduling.

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace speclocc::detail {

/// Pairwise (tree) summation over a span; associativity order is fixed by
/// the recursion, independent of how the values were produced.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double total = 0.0;
        for (double v : values) {
            total += v;
        }
        return total;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Runs body(i) for i in [0, count) across a static partition of threads.
/// body must only touch state owned by index i. The first exception thrown
/// by any worker is rethrown on the calling thread after all workers join.
template <typename Body>
void parallel_for_index(long long count, Body &&body) {
    const unsigned hw = std::thread::hardware_concurrency();
    const long long workers =
        std::min<long long>(count, hw == 0 ? 1 : static_cast<long long>(hw));
    if (workers <= 1) {
        for (long long i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long long w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long long i = w; i < count; i += workers) {
                    body(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace speclocc::detail
