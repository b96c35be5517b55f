// Copyright 2026 The fptc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPTC_PARALLEL_HPP_
#define FPTC_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace fptc {

// Name of the environment variable holding the worker count (0 = auto).
inline constexpr const char* kThreadsEnv = "FPTC_THREADS";

// Worker count from FPTC_THREADS; unset, 0 or unparsable means one per
// hardware thread.
int ThreadCountFromEnv();

// Resolves a requested count: values <= 0 mean one per hardware thread.
int ResolveThreads(int requested);

// Splits [0, n) into contiguous chunks, one per worker, and calls
// body(begin, end) for each. Runs inline when threads <= 1 or n <= 1.
// Exceptions from workers are rethrown on the calling thread (the first
// chunk's exception wins).
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fptc

#endif  // FPTC_PARALLEL_HPP_
