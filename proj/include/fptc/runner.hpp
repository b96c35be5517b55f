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

#ifndef FPTC_RUNNER_HPP_
#define FPTC_RUNNER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fptc/oracle.hpp"
#include "fptc/result.hpp"
#include "fptc/scenario_file.hpp"

namespace fptc {

struct RunOptions {
  std::optional<std::uint64_t> seed;      // overrides the Monte Carlo seed
  std::optional<std::size_t> samples;     // overrides the sample count
  int threads = 0;                        // Monte Carlo workers; 0 = auto
  std::optional<int> repeats;             // overrides timing repeats
};

struct ResultRow {
  std::string method;
  std::string partition;
  double runtime_ms = 0.0;
  double probability = 0.0;  // [0, 1]
  MethodResult detail;
  std::optional<McEstimate> mc;
};

struct ResultTable {
  std::string scenario;
  std::vector<ResultRow> rows;
};

// Runs a single method once. Failures are rethrown as MethodError carrying
// the method name.
MethodResult RunMethod(const ScenarioConfig& config, const MethodSpec& spec,
                       const McConfig& mc);

// Runs every configured method; deterministic apart from runtimes.
ResultTable Run(const ScenarioConfig& config, const RunOptions& options = {});

// Writes results.csv, segments.csv and, when Monte Carlo ran, mc.csv.
void WriteResults(const ResultTable& table, const std::filesystem::path& dir);

// Fixed-precision CSV text of the results table.
std::string ResultsCsv(const ResultTable& table);

struct TimingSummary {
  std::string method;
  std::string partition;
  int repeats = 0;
  double mean_ms = 0.0;
  double std_ms = 0.0;
};

// Wall-clock statistics over `repeats` calls per method after `warmup`
// discarded calls. Monte Carlo entries are skipped.
std::vector<TimingSummary> Bench(const ScenarioConfig& config, int repeats,
                                 int warmup);

// Writes nominal.txt (t x y), boundary.txt (x1 y1 x2 y2 nx ny) and, when
// n_paths > 0, samples.txt (path t x y).
void EmitPlotData(const Scenario& scenario, std::size_t n_paths,
                  const McConfig& mc, const std::filesystem::path& dir);

}  // namespace fptc

#endif  // FPTC_RUNNER_HPP_
