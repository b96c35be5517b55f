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

#ifndef FPTC_MOTION_HPP_
#define FPTC_MOTION_HPP_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fptc/belief.hpp"
#include "fptc/geometry.hpp"

namespace fptc {

using Mat42 = Eigen::Matrix<double, 4, 2>;

// Linear state feedback on the tracking error, one gain per axis.
struct FeedbackGains {
  Vec2 position = Vec2::Zero();  // 1/s^2
  Vec2 velocity = Vec2::Zero();  // 1/s
};

// Time-invariant linear Gaussian model  x' = A x + B u + B_eta eta  where eta
// is white noise with diffusion matrix Q. The state layout is
// [position; velocity].
//
// The two factories describe the deviation of the vehicle from its plan:
// for the open-loop double integrator the deviation and the full state obey
// the same equation, for the tracking controller the deviation is the
// closed-loop tracking error.
struct LtiModel {
  Mat4 state_matrix = Mat4::Zero();
  Mat42 input_matrix = Mat42::Zero();
  Mat42 noise_matrix = Mat42::Zero();
  Mat2 diffusion = Mat2::Zero();
  Vec2 input = Vec2::Zero();  // held constant over one propagation step
  std::optional<FeedbackGains> gains;

  bool closed_loop() const { return gains.has_value(); }

  // Noise acts on acceleration; no feedback.
  static LtiModel DoubleIntegrator(const Mat2& diffusion);
  // Double integrator with acceleration command -Kp e_r - Kd e_v.
  static LtiModel TrackingController(const Mat2& diffusion,
                                     const FeedbackGains& gains);
};

// Exact zero-order-hold discretization over a fixed step.
struct Discretization {
  double dt = 0.0;
  Mat4 transition = Mat4::Identity();           // exp(A dt)
  Mat42 input_gain = Mat42::Zero();             // int_0^dt exp(A s) ds B
  Mat4 process_noise = Mat4::Zero();            // discretized noise covariance
};

Discretization Discretize(const LtiModel& model, double dt);

// One exact step. Throws NonPsdCovariance when the update produces an
// eigenvalue below -1e-9.
GaussianBelief Propagate(const Discretization& disc, const Vec2& input,
                         const GaussianBelief& belief);
GaussianBelief Propagate(const LtiModel& model, const GaussianBelief& belief,
                         double dt);

// Position variance of an integrated white-noise acceleration started from a
// known state: sigma^2 t^3 / 3.
double OpenLoopVariance(double sigma, double t);

// Fixed point of the covariance recursion. Throws UnstableModel when the
// doubling iteration diverges.
Mat4 SteadyStateCovariance(const LtiModel& model);
// n^T C_R,ss n for unit `direction`.
double SteadyStateCovariance(const LtiModel& model, const Vec2& direction);

struct PlanStage {
  Point2 start;
  Vec2 velocity;    // m/s
  double duration;  // s
};

struct PlanSample {
  Point2 position;
  Vec2 velocity;
  std::size_t stage = 0;
};

// Mean motion made of straight constant-velocity legs.
class PiecewiseLinearPlan {
 public:
  PiecewiseLinearPlan() = default;
  // Validates positive durations and positional continuity (1e-9 m).
  explicit PiecewiseLinearPlan(std::vector<PlanStage> stages);

  struct Waypoint {
    Point2 to;
    double speed;  // m/s, > 0
  };
  static PiecewiseLinearPlan FromWaypoints(const Point2& start,
                                           const std::vector<Waypoint>& legs);

  const std::vector<PlanStage>& stages() const { return stages_; }
  double duration() const { return total_; }
  double stage_start_time(std::size_t i) const { return start_times_[i]; }
  double stage_end_time(std::size_t i) const {
    return start_times_[i] + stages_[i].duration;
  }
  Point2 stage_end(std::size_t i) const {
    return stages_[i].start + stages_[i].velocity * stages_[i].duration;
  }

  // Stage whose half-open interval [start, end) holds t; the last stage owns
  // the final instant.
  std::size_t StageAt(double t) const;

  // Throws OutOfHorizon outside [0, duration].
  PlanSample Sample(double t) const;

 private:
  std::vector<PlanStage> stages_;
  std::vector<double> start_times_;
  double total_ = 0.0;
};

// Full-state belief: plan mean plus a zero-mean deviation with covariance
// `deviation_covariance`.
GaussianBelief PlanBelief(const PiecewiseLinearPlan& plan, double t,
                          const Mat4& deviation_covariance);

// Uniform grid 0, dt, 2 dt, ... ending exactly at `horizon`; the last step
// is shortened when horizon is not a multiple of dt.
std::vector<double> TimeGrid(double horizon, double dt);

// Throws NonPsdCovariance unless `c` is symmetric within 1e-12 (relative) and
// its eigenvalues are >= -tolerance.
void CheckCovariance(const Mat4& c, double tolerance = 1e-9);

}  // namespace fptc

#endif  // FPTC_MOTION_HPP_
