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

#include "fptc/conflict.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "fptc/errors.hpp"
#include "fptc/fptd.hpp"
#include "fptc/parallel.hpp"

namespace fptc {

ClosedLoop ClosedLoop::FromGains(const Mat2& diffusion,
                                 const FeedbackGains& gains) {
  const Mat4 ss =
      SteadyStateCovariance(LtiModel::TrackingController(diffusion, gains));
  return {ss.topLeftCorner<2, 2>()};
}

void ConflictQuery::Validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (dt > horizon) throw InvalidArgument("dt must not exceed the horizon");
  if (plan.stages().empty()) throw InvalidArgument("plan has no stages");
  if (horizon > plan.duration() + 1e-9) {
    throw InvalidArgument("horizon " + std::to_string(horizon) +
                          " s exceeds the plan duration " +
                          std::to_string(plan.duration()) + " s");
  }
  if (boundary.empty()) throw InvalidArgument("boundary has no segments");
}

ScalarGaussian ConditionalMoments(const GaussianBelief& horizontal_belief,
                                  double y_boundary) {
  const Mat2 c = horizontal_belief.position_covariance();
  const Vec2 m = horizontal_belief.position();
  if (!(c(1, 1) > 1e-15)) {
    throw DegenerateVariance("normal-direction variance " +
                             std::to_string(c(1, 1)));
  }
  const double gain = c(1, 0) / c(1, 1);
  return {m.x() + (y_boundary - m.y()) * gain,
          std::max(0.0, c(0, 0) - c(1, 0) * gain)};
}

double SegmentMass(const ScalarGaussian& cond, double x1, double x2) {
  if (x2 <= x1) return 0.0;
  if (!(cond.variance > 0.0)) {
    return (cond.mean >= x1 && cond.mean <= x2) ? 1.0 : 0.0;
  }
  const double s = std::sqrt(2.0 * cond.variance);
  const double mass =
      0.5 * (std::erf((x2 - cond.mean) / s) - std::erf((x1 - cond.mean) / s));
  return std::clamp(mass, 0.0, 1.0);
}

ConflictPredictor::ConflictPredictor(ConflictQuery query)
    : query_(std::move(query)) {
  query_.Validate();
  t_ = TimeGrid(query_.horizon, query_.dt);
  const std::size_t n = t_.size();
  mean_.resize(n);
  cov_.resize(n);
  stage_.resize(n);
  const auto* open = std::get_if<OpenLoop>(&query_.model);
  variance_ = open != nullptr
                  ? VarianceModel::OpenLoop(open->diffusion)
                  : VarianceModel::ClosedLoop(
                        std::get<ClosedLoop>(query_.model)
                            .steady_position_covariance);
  for (std::size_t k = 0; k < n; ++k) {
    const PlanSample s = query_.plan.Sample(std::min(t_[k], query_.plan.duration()));
    mean_[k] = s.position;
    stage_[k] = s.stage;
    cov_[k] = open != nullptr ? Mat2(open->diffusion * (t_[k] * t_[k] * t_[k] / 3.0))
                              : variance_.matrix();
  }
  const auto& stages = query_.plan.stages();
  stage_starts_.reserve(stages.size());
  for (std::size_t i = 0; i < stages.size(); ++i) {
    stage_starts_.push_back(
        PlanBelief(query_.plan, query_.plan.stage_start_time(i), Mat4::Zero()));
  }
}

SegmentResult ConflictPredictor::Segment(std::size_t index) const {
  const fptc::Segment& seg = query_.boundary.segment(index);
  const Vec2& n = query_.boundary.normal(index);
  const Vec2 tau(n.y(), -n.x());
  double x1 = tau.dot(seg.p1);
  double x2 = tau.dot(seg.p2);
  if (x2 < x1) std::swap(x1, x2);

  SegmentResult out;
  out.index = index;

  // One reduced process per plan stage; stages are only reduced if the grid
  // visits them.
  const std::size_t n_stages = query_.plan.stages().size();
  std::vector<Reduced1DProcess> procs(n_stages);
  std::vector<char> active(n_stages, 0);
  for (std::size_t s = 0; s < n_stages; ++s) {
    procs[s] = ReduceStage(query_.plan.stages()[s], stage_starts_[s], seg, n,
                           variance_);
    active[s] = ApproachTest(procs[s]) ? 1 : 0;
  }
  const double alpha = procs.front().alpha;

  double integral = 0.0;
  double prev = 0.0;
  std::vector<char> visited(n_stages, 0);
  for (std::size_t k = 0; k < t_.size(); ++k) {
    const double t = t_[k];
    const std::size_t s = stage_[k];
    visited[s] = 1;
    double g = 0.0;
    if (active[s]) {
      if (t >= procs[s].valid_until) out.diagnostics |= kDiagValidityTruncated;
      const double f = FirstPassageDensity(procs[s], t);
      if (f > 0.0) {
        const Mat2& c = cov_[k];
        const Vec2 cn = c * n;
        const double c_y = n.dot(cn);
        const double c_yx = tau.dot(cn);
        const double c_x = tau.dot(c * tau);
        if (c_y > 1e-15) {
          const double gain = c_yx / c_y;
          const ScalarGaussian cond{
              tau.dot(mean_[k]) + (alpha - n.dot(mean_[k])) * gain,
              std::max(0.0, c_x - c_yx * gain)};
          g = f * SegmentMass(cond, x1, x2);
        }
      }
    }
    if (k > 0) integral += 0.5 * (prev + g) * (t - t_[k - 1]);
    prev = g;
  }
  for (std::size_t s = 0; s < n_stages; ++s) {
    if (visited[s] && !active[s]) out.diagnostics |= kDiagSkippedStage;
  }
  if (integral > 1.0) out.diagnostics |= kDiagClamped;
  out.probability = std::clamp(integral, 0.0, 1.0);
  return out;
}

MethodResult ConflictPredictor::Run(int threads) const {
  const auto start = std::chrono::steady_clock::now();
  MethodResult r;
  r.method = "proposed";
  r.partition = std::to_string(query_.boundary.size()) + " segments";
  r.per_segment.resize(query_.boundary.size());
  ParallelFor(query_.boundary.size(), threads,
              [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                  r.per_segment[i] = Segment(i);
                }
              });
  double total = 0.0;
  for (const auto& s : r.per_segment) total += s.probability;
  r.probability = std::min(1.0, total);
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  return r;
}

double SegmentConflictProbability(const ConflictQuery& query,
                                  std::size_t index) {
  return ConflictPredictor(query).Segment(index).probability;
}

MethodResult BoundaryConflictProbability(const ConflictQuery& query,
                                         int threads) {
  const auto start = std::chrono::steady_clock::now();
  MethodResult r = ConflictPredictor(query).Run(threads);
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  return r;
}

}  // namespace fptc
