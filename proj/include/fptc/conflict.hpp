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

#ifndef FPTC_CONFLICT_HPP_
#define FPTC_CONFLICT_HPP_

#include <variant>
#include <vector>

#include "fptc/belief.hpp"
#include "fptc/geometry.hpp"
#include "fptc/motion.hpp"
#include "fptc/reduction.hpp"
#include "fptc/result.hpp"

namespace fptc {

// Double integrator started from a known state: C_R(t) = Q t^3 / 3.
struct OpenLoop {
  Mat2 diffusion = Mat2::Zero();
};

// Tracking controller assumed settled: C_R(t) = C_R,ss for all t.
struct ClosedLoop {
  Mat2 steady_position_covariance = Mat2::Zero();

  static ClosedLoop FromGains(const Mat2& diffusion,
                              const FeedbackGains& gains);
};

using ModelKind = std::variant<OpenLoop, ClosedLoop>;

struct ConflictQuery {
  PiecewiseLinearPlan plan;
  ModelKind model = OpenLoop{};
  ConflictBoundary boundary;
  double horizon = 0.0;  // t_H, s
  double dt = 0.0;       // quadrature step, s

  // Throws InvalidArgument unless 0 < dt <= horizon <= plan duration.
  void Validate() const;
};

// Distribution of the tangential coordinate given that the normal
// coordinate equals `y_boundary`, for a belief already in the horizontal
// frame (x tangential, y normal). Throws DegenerateVariance when C_Y <= 1e-15.
ScalarGaussian ConditionalMoments(const GaussianBelief& horizontal_belief,
                                  double y_boundary);

// Probability mass of N(cond) on [x1, x2]. A zero variance gives the
// indicator of the mean lying in the interval.
double SegmentMass(const ScalarGaussian& cond, double x1, double x2);

// The proposed predictor. The constructor precomputes the time grid, the
// mean path and the position covariance; segments are then independent.
class ConflictPredictor {
 public:
  explicit ConflictPredictor(ConflictQuery query);

  const ConflictQuery& query() const { return query_; }

  // Integral over [0, t_H] of f_tau(t) times the first-crossing mass on
  // segment `index`, clamped to [0, 1].
  SegmentResult Segment(std::size_t index) const;

  // Per-segment results summed and clamped at 1. `threads` > 1 spreads the
  // segments over workers; the result does not depend on it.
  MethodResult Run(int threads = 1) const;

 private:
  ConflictQuery query_;
  VarianceModel variance_;
  std::vector<double> t_;
  std::vector<Point2> mean_;
  std::vector<Mat2> cov_;
  std::vector<std::size_t> stage_;
  std::vector<GaussianBelief> stage_starts_;
};

double SegmentConflictProbability(const ConflictQuery& query,
                                  std::size_t index);
MethodResult BoundaryConflictProbability(const ConflictQuery& query,
                                         int threads = 1);

}  // namespace fptc

#endif  // FPTC_CONFLICT_HPP_
