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

#ifndef FPTC_ORACLE_HPP_
#define FPTC_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "fptc/geometry.hpp"
#include "fptc/scenario.hpp"

namespace fptc {

struct McConfig {
  std::size_t n_samples = 1'000'000;
  double dt = 0.0;  // s; 0 means the scenario's sampling period
  std::uint64_t seed = 1;
  // Closed loop: start from zero covariance and simulate the settling
  // transient. When false the deviation starts from the steady state.
  bool transient = true;
  // Count entries into the exact disk when the scenario has one, instead of
  // crossings of the polygonal boundary.
  bool exact_region = true;
  int threads = 1;  // <= 0 means one per hardware thread
};

struct McEstimate {
  double probability = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / n)
  std::size_t n_samples = 0;
  std::size_t hits = 0;
  double runtime_s = 0.0;
};

struct SampledPath {
  std::vector<double> t;
  std::vector<Point2> position;
};

// Seed of the generator for path `index`; every path has its own stream so
// results do not depend on how paths are spread over threads.
std::uint64_t PathSeed(std::uint64_t seed, std::uint64_t index);

// Path `index` of the Monte Carlo run: plan mean plus an exactly
// discretized deviation. Deterministic in (seed, index).
SampledPath SampleTrajectory(const Scenario& scenario, const McConfig& config,
                             std::uint64_t index);

// Earliest time at which the piecewise-linear path meets the region; the
// step is interpolated linearly.
std::optional<double> FirstCrossing(const SampledPath& path,
                                    const ConflictBoundary& boundary);
std::optional<double> FirstCrossing(const SampledPath& path, const Disk& disk);

// Fraction of sampled paths reaching the region within the horizon.
McEstimate Estimate(const Scenario& scenario, const McConfig& config);

}  // namespace fptc

#endif  // FPTC_ORACLE_HPP_
