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

#include "fptc/reduction.hpp"

#include <cmath>
#include <string>

#include "fptc/errors.hpp"
#include "fptc/fptd.hpp"

namespace fptc {

ScalarGaussian ReducePosition(const GaussianBelief& belief, const Vec2& n) {
  return {n.dot(belief.position()),
          n.dot(belief.position_covariance() * n)};
}

ScalarGaussian ReduceVelocity(const GaussianBelief& belief, const Vec2& n) {
  return {n.dot(belief.velocity()),
          n.dot(belief.velocity_covariance() * n)};
}

double ReduceNoise(const Mat2& diffusion, const Vec2& n) {
  return std::sqrt(std::max(0.0, n.dot(diffusion * n)));
}

double Reduced1DProcess::Variance(double t) const {
  if (const auto* c = std::get_if<ConstantVariance>(&law)) return c->c_ss;
  const double s = std::get<CubicVariance>(law).sigma;
  return OpenLoopVariance(s, t);
}

double Reduced1DProcess::VarianceRate(double t) const {
  if (std::holds_alternative<ConstantVariance>(law)) return 0.0;
  const double s = std::get<CubicVariance>(law).sigma;
  return s * s * t * t;
}

void Reduced1DProcess::Validate() const {
  if (const auto* c = std::get_if<ConstantVariance>(&law)) {
    if (!(c->c_ss > 0.0) || !std::isfinite(c->c_ss)) {
      throw DegenerateVariance("steady-state variance must be positive, got " +
                               std::to_string(c->c_ss));
    }
  } else {
    const double s = std::get<CubicVariance>(law).sigma;
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DegenerateVariance("noise strength must be positive, got " +
                               std::to_string(s));
    }
  }
}

VarianceModel VarianceModel::OpenLoop(const Mat2& diffusion) {
  VarianceModel m;
  m.closed_loop_ = false;
  m.matrix_ = diffusion;
  return m;
}

VarianceModel VarianceModel::ClosedLoop(const Mat2& steady_position_covariance) {
  VarianceModel m;
  m.closed_loop_ = true;
  m.matrix_ = steady_position_covariance;
  return m;
}

VarianceLaw VarianceModel::Along(const Vec2& n) const {
  if (closed_loop_) return ConstantVariance{n.dot(matrix_ * n)};
  return CubicVariance{ReduceNoise(matrix_, n)};
}

Reduced1DProcess ReduceStage(const PlanStage& stage,
                             const GaussianBelief& stage_start,
                             const Segment& segment, const Vec2& normal,
                             const VarianceModel& variance) {
  Reduced1DProcess p;
  p.alpha = normal.dot(segment.p1);
  p.mu = normal.dot(stage.velocity);
  p.r0 = normal.dot(stage_start.position()) - p.mu * stage_start.time;
  p.law = variance.Along(normal);
  p.Validate();
  p.valid_until = ValidityBound(p);
  return p;
}

Reduced1DProcess BuildReduced(const PlanStage& stage,
                              const GaussianBelief& stage_start,
                              const Segment& segment, const Vec2& normal,
                              const VarianceModel& variance) {
  Reduced1DProcess p =
      ReduceStage(stage, stage_start, segment, normal, variance);
  if (!ApproachTest(p)) {
    throw NotApproaching("mean velocity " + std::to_string(p.mu) +
                         " carries the process away from the boundary");
  }
  return p;
}

}  // namespace fptc
