// SPDX-License-Identifier: Apache-2.0
//
// rissim - simulator for RIS-assisted mmWave FDD downlink
// Copyright (C) 2026 rissim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Fixed-size worker pool over realization indices. Each index is computed independently and the
// results are returned in index order, so the output does not depend on the worker count. If
// several indices throw, the exception of the lowest index is rethrown.

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace rissim::detail
{

template <class T, class F>
std::vector<T> parallel_map(long n, int workers, F &&fn)
{
    std::vector<T> out(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::atomic<long> next{0};
    auto work = [&] {
        for (long i = next++; i < n; i = next++)
        {
            try
            {
                out[std::size_t(i)] = fn(i);
            }
            catch (...)
            {
                errors[std::size_t(i)] = std::current_exception();
            }
        }
    };
    const int nt = std::max(1, std::min<int>(workers, int(std::max<long>(n, 1))));
    if (nt == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace rissim::detail
