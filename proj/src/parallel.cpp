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

#include "fptc/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "fptc/result.hpp"

namespace fptc {

std::string DiagnosticString(std::uint32_t flags) {
  std::string out;
  auto add = [&](std::uint32_t bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += ' ';
    out += name;
  };
  add(kDiagSkippedStage, "skipped_stage");
  add(kDiagValidityTruncated, "validity_truncated");
  add(kDiagClamped, "clamped");
  return out.empty() ? "none" : out;
}

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int ThreadCountFromEnv() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr) return ResolveThreads(0);
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0) return ResolveThreads(0);
  return ResolveThreads(static_cast<int>(std::min<long>(v, 1024)));
}

void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = n / workers;
  const std::size_t extra = n % workers;
  auto bounds = [&](std::size_t w) {
    const std::size_t begin = w * chunk + std::min(w, extra);
    return std::pair{begin, begin + chunk + (w < extra ? 1 : 0)};
  };
  auto run = [&](std::size_t w) {
    try {
      const auto [b, e] = bounds(w);
      body(b, e);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fptc
