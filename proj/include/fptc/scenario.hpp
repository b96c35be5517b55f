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

#ifndef FPTC_SCENARIO_HPP_
#define FPTC_SCENARIO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "fptc/belief.hpp"
#include "fptc/conflict.hpp"
#include "fptc/geometry.hpp"
#include "fptc/motion.hpp"

namespace fptc {

// One encounter: a vehicle following `plan` with Gaussian deviations driven
// by acceleration noise, and a static conflict region. The vehicle state is
// known exactly at t = 0.
struct Scenario {
  std::string name;
  PiecewiseLinearPlan plan;
  Mat2 diffusion = Mat2::Zero();         // Q, (m/s^2)^2 s
  std::optional<FeedbackGains> gains;    // set for closed-loop tracking
  ConflictBoundary boundary;
  std::optional<Disk> disk;              // exact region when circular
  double horizon = 0.0;                  // t_H, s
  double dt = 0.0;                       // sampling period, s

  bool closed_loop() const { return gains.has_value(); }

  // Dynamics of the deviation from the plan.
  LtiModel DeviationModel() const;

  // Query for the proposed predictor.
  ConflictQuery Query() const;

  // Exact beliefs (plan mean, propagated deviation covariance) at the
  // increasing times in `grid`, starting from zero covariance at t = 0.
  std::vector<GaussianBelief> Beliefs(const std::vector<double>& grid) const;

  // Throws InvalidArgument on inconsistent fields.
  void Validate() const;
};

// Copy of `s` with every geometric quantity mapped through `t`. The
// diffusion matrix and gains are rotated too, so probabilities are
// unchanged.
Scenario TransformScenario(const Scenario& s, const RigidTransform& t);

}  // namespace fptc

#endif  // FPTC_SCENARIO_HPP_
