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

#include "fptc/motion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "fptc/errors.hpp"

namespace fptc {
namespace {

Mat4 Symmetrized(const Mat4& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

LtiModel LtiModel::DoubleIntegrator(const Mat2& diffusion) {
  LtiModel m;
  m.state_matrix.topRightCorner<2, 2>() = Mat2::Identity();
  m.input_matrix.bottomRows<2>() = Mat2::Identity();
  m.noise_matrix.bottomRows<2>() = Mat2::Identity();
  m.diffusion = diffusion;
  return m;
}

LtiModel LtiModel::TrackingController(const Mat2& diffusion,
                                      const FeedbackGains& gains) {
  LtiModel m = DoubleIntegrator(diffusion);
  m.state_matrix.bottomLeftCorner<2, 2>() = -gains.position.asDiagonal().toDenseMatrix();
  m.state_matrix.bottomRightCorner<2, 2>() = -gains.velocity.asDiagonal().toDenseMatrix();
  m.gains = gains;
  return m;
}

Discretization Discretize(const LtiModel& model, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const Mat4& a = model.state_matrix;
  Discretization d;
  d.dt = dt;
  d.transition = (a * dt).exp();

  Eigen::Matrix<double, 6, 6> aug = Eigen::Matrix<double, 6, 6>::Zero();
  aug.topLeftCorner<4, 4>() = a * dt;
  aug.topRightCorner<4, 2>() = model.input_matrix * dt;
  d.input_gain = aug.exp().topRightCorner<4, 2>();

  // Van Loan: exp([[-A, G], [0, A^T]] dt) holds Phi^-1 Qd in its upper-right
  // block.
  const Mat4 g =
      model.noise_matrix * model.diffusion * model.noise_matrix.transpose();
  Eigen::Matrix<double, 8, 8> vl = Eigen::Matrix<double, 8, 8>::Zero();
  vl.topLeftCorner<4, 4>() = -a * dt;
  vl.topRightCorner<4, 4>() = g * dt;
  vl.bottomRightCorner<4, 4>() = a.transpose() * dt;
  const Eigen::Matrix<double, 8, 8> e = vl.exp();
  d.process_noise = Symmetrized(d.transition * e.topRightCorner<4, 4>());
  return d;
}

void CheckCovariance(const Mat4& c, double tolerance) {
  if (!c.allFinite()) throw NonPsdCovariance("covariance is not finite");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NonPsdCovariance("covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(c, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance) {
    throw NonPsdCovariance("covariance has eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()));
  }
}

GaussianBelief Propagate(const Discretization& disc, const Vec2& input,
                         const GaussianBelief& belief) {
  GaussianBelief out;
  out.time = belief.time + disc.dt;
  out.mean = disc.transition * belief.mean + disc.input_gain * input;
  out.covariance = Symmetrized(disc.transition * belief.covariance *
                                   disc.transition.transpose() +
                               disc.process_noise);
  CheckCovariance(out.covariance);
  return out;
}

GaussianBelief Propagate(const LtiModel& model, const GaussianBelief& belief,
                         double dt) {
  return Propagate(Discretize(model, dt), model.input, belief);
}

double OpenLoopVariance(double sigma, double t) {
  return sigma * sigma * t * t * t / 3.0;
}

Mat4 SteadyStateCovariance(const LtiModel& model) {
  // Smith doubling on the exactly discretized chain; its fixed point equals
  // the continuous-time one for any step.
  constexpr double kStep = 0.01;
  constexpr int kMaxDoublings = 200;
  constexpr int kGrowthLimit = 10;
  const Discretization disc = Discretize(model, kStep);
  Mat4 p = disc.process_noise;
  Mat4 phi = disc.transition;
  double prev_norm = phi.norm();
  int growth = 0;
  for (int k = 0; k < kMaxDoublings; ++k) {
    const Mat4 next = Symmetrized(p + phi * p * phi.transpose());
    const double trace_step = next.trace() - p.trace();
    p = next;
    phi = phi * phi;
    const double norm = phi.norm();
    if (!p.allFinite()) throw UnstableModel("covariance iteration overflowed");
    if (norm < 1e-30) {
      const Mat4 residual = disc.transition * p * disc.transition.transpose() +
                            disc.process_noise - p;
      if (residual.cwiseAbs().maxCoeff() >
          1e-10 * std::max(1.0, p.cwiseAbs().maxCoeff())) {
        throw UnstableModel("steady-state residual too large");
      }
      return p;
    }
    if (norm >= prev_norm && trace_step >= 0.0) {
      if (++growth >= kGrowthLimit) {
        throw UnstableModel("covariance grows without bound");
      }
    } else {
      growth = 0;
    }
    prev_norm = norm;
  }
  throw UnstableModel("covariance iteration did not converge");
}

double SteadyStateCovariance(const LtiModel& model, const Vec2& direction) {
  const Mat4 c = SteadyStateCovariance(model);
  return direction.dot(c.topLeftCorner<2, 2>() * direction);
}

PiecewiseLinearPlan::PiecewiseLinearPlan(std::vector<PlanStage> stages)
    : stages_(std::move(stages)) {
  if (stages_.empty()) throw InvalidPlan("plan has no stages");
  start_times_.reserve(stages_.size());
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    const PlanStage& s = stages_[i];
    if (!(s.duration > 0.0)) {
      throw InvalidPlan("stage " + std::to_string(i) +
                        " has non-positive duration");
    }
    if (!s.start.allFinite() || !s.velocity.allFinite()) {
      throw InvalidPlan("stage " + std::to_string(i) + " is not finite");
    }
    if (i > 0) {
      const Point2 end = stage_end(i - 1);
      if ((end - s.start).norm() > 1e-9) {
        throw InvalidPlan("stage " + std::to_string(i) +
                          " does not start where the previous stage ends");
      }
    }
    start_times_.push_back(total_);
    total_ += s.duration;
  }
}

PiecewiseLinearPlan PiecewiseLinearPlan::FromWaypoints(
    const Point2& start, const std::vector<Waypoint>& legs) {
  std::vector<PlanStage> stages;
  Point2 from = start;
  for (const Waypoint& leg : legs) {
    const Vec2 d = leg.to - from;
    const double length = d.norm();
    if (!(leg.speed > 0.0)) throw InvalidPlan("leg speed must be positive");
    if (length < 1e-9) throw InvalidPlan("leg has zero length");
    PlanStage s{from, d / length * leg.speed, length / leg.speed};
    stages.push_back(s);
    // Snap to the exact waypoint so continuity holds to rounding.
    from = leg.to;
    stages.back().velocity = (leg.to - s.start) / s.duration;
  }
  return PiecewiseLinearPlan(std::move(stages));
}

std::size_t PiecewiseLinearPlan::StageAt(double t) const {
  for (std::size_t i = 0; i + 1 < stages_.size(); ++i) {
    if (t < start_times_[i + 1]) return i;
  }
  return stages_.size() - 1;
}

PlanSample PiecewiseLinearPlan::Sample(double t) const {
  if (stages_.empty()) throw InvalidPlan("plan has no stages");
  if (!(t >= 0.0) || t > total_ + 1e-12) {
    throw OutOfHorizon("time " + std::to_string(t) + " s outside the plan");
  }
  const std::size_t i = StageAt(t);
  const PlanStage& s = stages_[i];
  return {s.start + s.velocity * (t - start_times_[i]), s.velocity, i};
}

GaussianBelief PlanBelief(const PiecewiseLinearPlan& plan, double t,
                          const Mat4& deviation_covariance) {
  const PlanSample s = plan.Sample(t);
  GaussianBelief b;
  b.time = t;
  b.mean << s.position, s.velocity;
  b.covariance = deviation_covariance;
  return b;
}

std::vector<double> TimeGrid(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw InvalidArgument("time grid needs positive horizon and step");
  }
  const double ratio = horizon / dt;
  auto n = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  std::vector<double> t;
  t.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) t.push_back(static_cast<double>(k) * dt);
  if (horizon - t.back() > 1e-9 * horizon) {
    t.push_back(horizon);
  } else {
    t.back() = horizon;
  }
  return t;
}

}  // namespace fptc
