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

#ifndef FPTC_BASELINES_HPP_
#define FPTC_BASELINES_HPP_

#include <vector>

#include "fptc/geometry.hpp"
#include "fptc/result.hpp"
#include "fptc/scenario.hpp"

namespace fptc {

// Boundary partition for the probability-flow methods. Circular regions are
// split into `intervals` equal arcs of the exact circle; segment boundaries
// into pieces no longer than `interval_length_m`.
struct PfConfig {
  int intervals = 0;
  double interval_length_m = 0.0;
  double dt = 0.0;  // time step, s; 0 means the scenario's sampling period

  // Label such as "20" or "0.05 m".
  std::string Label() const;
};

// Quadrature node on the boundary: position, outward normal and the
// boundary length it represents.
struct FluxNode {
  Point2 position;
  Vec2 normal;
  double weight = 0.0;
  std::size_t group = 0;  // interval or segment the node belongs to
};

// Throws InvalidArgument when neither partition is set.
std::vector<FluxNode> PartitionBoundary(const Scenario& scenario,
                                        const PfConfig& config);

// Inward flux p_R(r) E[(-V_n)^+ | R = r] integrated over boundary and time.
MethodResult PfVdj(const Scenario& scenario, const PfConfig& config);

enum class ParkVariant { kPublished, kAltered };

// Drift plus diffusion flux. The drift velocity is the mean normal velocity
// limited to inward motion (published) or -E[min(V_n, 0)] (altered).
MethodResult PfPark(const Scenario& scenario, const PfConfig& config,
                    ParkVariant variant);

// E[min(V, 0)] for V ~ N(mean, stddev^2). Always <= 0.
double ParkBeta(double mean, double stddev);

struct IcpConfig {
  int n_rectangles = 20;
  double accumulation_period = 0.15;  // s
};

// Gaussian position mass inside `disk`, from equal-width slabs after
// rotating to the principal axes of `cov`. Each slab spans the chord of the
// disk at its center line.
double IcpDiskMass(const Vec2& mean, const Mat2& cov, const Disk& disk,
                   int n_rectangles);

// Instantaneous conflict probability at t. Throws UnsupportedRegion unless
// the scenario carries a disk.
double IcpPour(const Scenario& scenario, const IcpConfig& config, double t);

enum class IcpMode {
  kMax,      // largest instantaneous value
  kAccLast,  // P[k+1] = P[k] + I[k+1] (1 - P[k])
  kAccAll,   // P[k+1] = P[k] + I[k+1] prod_{i<=k} (1 - P[i])
};

// Folds a sequence of instantaneous probabilities into a conflict
// probability.
double AccumulateIcp(const std::vector<double>& icp, IcpMode mode);

MethodResult IcpToConflict(const Scenario& scenario, const IcpConfig& config,
                           IcpMode mode);

}  // namespace fptc

#endif  // FPTC_BASELINES_HPP_
