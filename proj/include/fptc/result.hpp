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

#ifndef FPTC_RESULT_HPP_
#define FPTC_RESULT_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace fptc {

// Bit flags attached to per-segment results.
enum Diagnostic : std::uint32_t {
  kDiagNone = 0,
  // A plan stage never approached the segment and contributed nothing.
  kDiagSkippedStage = 1u << 0,
  // The open-loop density was cut off at its validity bound.
  kDiagValidityTruncated = 1u << 1,
  // The integrated value exceeded 1 and was clamped.
  kDiagClamped = 1u << 2,
};

// Space-separated names of the flags set in `flags`, or "none".
std::string DiagnosticString(std::uint32_t flags);

struct SegmentResult {
  std::size_t index = 0;
  double probability = 0.0;
  std::uint32_t diagnostics = kDiagNone;
};

struct MethodResult {
  std::string method;
  std::string partition;  // partition label, e.g. "6 segments"
  double probability = 0.0;
  std::vector<SegmentResult> per_segment;
  double runtime_s = 0.0;
};

}  // namespace fptc

#endif  // FPTC_RESULT_HPP_
