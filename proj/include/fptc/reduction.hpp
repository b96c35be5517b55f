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

#ifndef FPTC_REDUCTION_HPP_
#define FPTC_REDUCTION_HPP_

#include <limits>
#include <variant>

#include "fptc/belief.hpp"
#include "fptc/geometry.hpp"
#include "fptc/motion.hpp"

namespace fptc {

struct ScalarGaussian {
  double mean = 0.0;
  double variance = 0.0;
};

// Projections of a 2-D belief onto a unit direction.
ScalarGaussian ReducePosition(const GaussianBelief& belief, const Vec2& n);
ScalarGaussian ReduceVelocity(const GaussianBelief& belief, const Vec2& n);

// Noise strength of the projected process: sqrt(n^T Q n).
double ReduceNoise(const Mat2& diffusion, const Vec2& n);

// Variance held at its steady-state value (closed loop).
struct ConstantVariance {
  double c_ss = 0.0;
};

// Integrated white-noise acceleration from a known state: sigma^2 t^3 / 3.
struct CubicVariance {
  double sigma = 0.0;
};

using VarianceLaw = std::variant<ConstantVariance, CubicVariance>;

// Gaussian process R_n(t) ~ N(mu t + r0, c(t)) along a boundary normal, with
// the boundary at coordinate alpha. Time is measured from the start of the
// plan, so for a later plan stage r0 is the stage line extended back to t=0.
struct Reduced1DProcess {
  double alpha = 0.0;
  double r0 = 0.0;
  double mu = 0.0;
  VarianceLaw law = ConstantVariance{};
  // Upper end of the interval on which the density is defined; +inf when
  // unbounded.
  double valid_until = std::numeric_limits<double>::infinity();

  double Mean(double t) const { return mu * t + r0; }
  double Variance(double t) const;
  double VarianceRate(double t) const;
  bool constant_variance() const {
    return std::holds_alternative<ConstantVariance>(law);
  }

  // Throws DegenerateVariance unless the law parameter is positive.
  void Validate() const;
};

// How the projected variance evolves for a given motion model.
class VarianceModel {
 public:
  static VarianceModel OpenLoop(const Mat2& diffusion);
  static VarianceModel ClosedLoop(const Mat2& steady_position_covariance);

  VarianceLaw Along(const Vec2& n) const;
  bool closed_loop() const { return closed_loop_; }
  const Mat2& matrix() const { return matrix_; }

 private:
  bool closed_loop_ = false;
  Mat2 matrix_ = Mat2::Zero();
};

// 1-D process for one plan stage against one boundary segment. `stage_start`
// is the belief at the first instant of the stage. Throws NotApproaching when
// the approach test fails.
Reduced1DProcess BuildReduced(const PlanStage& stage,
                              const GaussianBelief& stage_start,
                              const Segment& segment, const Vec2& normal,
                              const VarianceModel& variance);

// Same construction without the approach check.
Reduced1DProcess ReduceStage(const PlanStage& stage,
                             const GaussianBelief& stage_start,
                             const Segment& segment, const Vec2& normal,
                             const VarianceModel& variance);

}  // namespace fptc

#endif  // FPTC_REDUCTION_HPP_
