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

#include <cmath>
#include <cstring>

#include "doctest.h"
#include "fptc/errors.hpp"
#include "fptc/fptd.hpp"
#include "fptc/oracle.hpp"
#include "test_util.hpp"

namespace fptc {
namespace {

Scenario ShortOpenLoop() {
  Scenario s = testing::OpenLoopScenario();
  s.horizon = 2.4;
  s.dt = 0.05;
  return s;
}

Scenario ShortClosedLoop() {
  Scenario s;
  s.plan = PiecewiseLinearPlan({{Point2(0, 0), Vec2(1.0, 0.5), 3.0}});
  s.diffusion = Vec2(2.0, 0.8).asDiagonal();
  s.gains = FeedbackGains{Vec2(4, 4), Vec2(3, 3)};
  s.boundary = ConflictBoundary({{{-100, 5}, {100, 5}}}, {Vec2(0, -1)});
  s.horizon = 3.0;
  s.dt = 0.02;
  return s;
}

// Sample covariance of the positions at the last grid point against the
// propagated covariance, entry by entry within 3 standard errors.
void CheckMoments(const Scenario& s) {
  McConfig cfg;
  cfg.seed = 77;
  const int n = 100'000;
  const std::vector<double> grid = TimeGrid(s.horizon, s.dt);
  const GaussianBelief b = s.Beliefs({0.0, grid.back()}).back();
  const Mat2 cov = b.position_covariance();
  Vec2 sum = Vec2::Zero();
  Mat2 sq = Mat2::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec2 d = SampleTrajectory(s, cfg, i).position.back() - b.position();
    sum += d;
    sq += d * d.transpose();
  }
  const Vec2 mean = sum / n;
  const Mat2 sample = (sq - n * mean * mean.transpose()) / (n - 1);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(mean[i]) < 3 * std::sqrt(cov(i, i) / n));
    for (int j = 0; j < 2; ++j) {
      const double se =
          std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / n);
      CHECK(std::abs(sample(i, j) - cov(i, j)) < 3 * se);
    }
  }
}

TEST_CASE("zero noise reproduces the plan") {
  Scenario s = testing::ClosedLoopScenario();
  s.diffusion.setZero();
  const SampledPath path = SampleTrajectory(s, {}, 5);
  REQUIRE(path.t.size() == TimeGrid(s.horizon, s.dt).size());
  for (std::size_t k = 0; k < path.t.size(); ++k) {
    const Point2 plan =
        s.plan.Sample(std::min(path.t[k], s.plan.duration())).position;
    REQUIRE((path.position[k] - plan).norm() < 1e-9);
  }
  McConfig cfg;
  cfg.n_samples = 1000;
  const McEstimate hit = Estimate(s, cfg);
  CHECK((hit.probability == 0.0 || hit.probability == 1.0));

  Scenario far = testing::OpenLoopScenario();
  far.diffusion.setZero();
  CHECK(Estimate(far, cfg).probability == 0.0);
  far.plan = PiecewiseLinearPlan({{Point2(100, 0), Vec2(-10, 0), 15.0}});
  const McEstimate through = Estimate(far, cfg);
  CHECK(through.probability == 1.0);
  CHECK(through.std_error == 0.0);
}

TEST_CASE("sample moments match propagation") {
  SUBCASE("open loop") { CheckMoments(ShortOpenLoop()); }
  SUBCASE("closed loop transient") { CheckMoments(ShortClosedLoop()); }
}

TEST_CASE("paths are reproducible") {
  const Scenario s = testing::OpenLoopScenario();
  McConfig cfg;
  cfg.seed = 123;
  const SampledPath a = SampleTrajectory(s, cfg, 42);
  const SampledPath b = SampleTrajectory(s, cfg, 42);
  REQUIRE(a.position.size() == b.position.size());
  CHECK(std::memcmp(a.position.data(), b.position.data(),
                    a.position.size() * sizeof(Point2)) == 0);
  const SampledPath c = SampleTrajectory(s, cfg, 43);
  CHECK(a.position.back() != c.position.back());
  CHECK(PathSeed(1, 2) != PathSeed(2, 1));
}

TEST_CASE("first crossing") {
  const ConflictBoundary boundary({{{-1, 0}, {1, 0}}}, {Vec2(0, -1)});
  SampledPath path;
  const double dt = 0.1;
  for (int k = 0; k <= 20; ++k) {
    path.t.push_back(k * dt);
    path.position.push_back(Point2(0, -0.73 + 0.5 * k * dt));
  }
  const auto t = FirstCrossing(path, boundary);
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - 0.73 / 0.5) < dt * 1e-9);

  SampledPath away = path;
  for (Point2& p : away.position) p.y() = -p.y() - 2.0;
  CHECK_FALSE(FirstCrossing(away, boundary).has_value());

  const Disk disk{Point2(0, 1), 1.0};
  const auto td = FirstCrossing(path, disk);
  REQUIRE(td.has_value());
  CHECK(std::abs(*td - 0.73 / 0.5) < dt * 1e-9);
}

TEST_CASE("estimates are independent of the thread count") {
  const Scenario s = ShortOpenLoop();
  McConfig cfg;
  cfg.n_samples = 20'000;
  cfg.seed = 9;
  cfg.threads = 1;
  const McEstimate one = Estimate(s, cfg);
  for (int threads : {2, 5}) {
    cfg.threads = threads;
    CHECK(Estimate(s, cfg).hits == one.hits);
  }
}

TEST_CASE("estimates grow with the horizon on a fixed sample set") {
  Scenario s = testing::OpenLoopScenario();
  McConfig cfg;
  cfg.n_samples = 20'000;
  cfg.seed = 3;
  std::size_t prev = 0;
  for (int steps : {200, 400, 600, 800, 1000}) {
    s.horizon = steps * s.dt;
    const McEstimate e = Estimate(s, cfg);
    CHECK(e.hits >= prev);
    prev = e.hits;
  }
  CHECK(prev > 0);
}

TEST_CASE("disjoint seed streams agree") {
  SUBCASE("open loop") {
    const Scenario s = testing::OpenLoopScenario();
    McConfig cfg;
    cfg.n_samples = 100'000;
    cfg.seed = 1001;
    const McEstimate a = Estimate(s, cfg);
    cfg.seed = 2002;
    const McEstimate b = Estimate(s, cfg);
    CHECK(std::abs(a.probability - b.probability) <
          4 * std::hypot(a.std_error, b.std_error));
  }
  SUBCASE("closed loop analogue") {
    const Scenario s = testing::ClosedLoopScenario();
    McConfig cfg;
    cfg.n_samples = 50'000;
    cfg.seed = 11;
    const McEstimate a = Estimate(s, cfg);
    cfg.seed = 12;
    const McEstimate b = Estimate(s, cfg);
    CHECK(std::abs(a.probability - b.probability) <
          3 * std::hypot(a.std_error, b.std_error));
  }
}

// Paths at dt/4 subsampled every fourth point are exact coarse paths, so the
// two detections see the same randomness and differ only by missed
// crossings between coarse samples.
template <typename Region>
void CheckRefinement(const Scenario& s, const Region& region, int paths,
                     std::size_t reference_samples) {
  McConfig fine;
  fine.dt = s.dt / 4;
  fine.seed = 5;
  int fine_hits = 0;
  int coarse_hits = 0;
  for (int i = 0; i < paths; ++i) {
    const SampledPath p = SampleTrajectory(s, fine, i);
    SampledPath c;
    for (std::size_t k = 0; k < p.t.size(); k += 4) {
      c.t.push_back(p.t[k]);
      c.position.push_back(p.position[k]);
    }
    REQUIRE(std::abs(c.t.back() - s.horizon) < 1e-9);
    fine_hits += FirstCrossing(p, region).has_value();
    coarse_hits += FirstCrossing(c, region).has_value();
  }
  const double p = static_cast<double>(fine_hits) / paths;
  const double change = static_cast<double>(fine_hits - coarse_hits) / paths;
  const double se = std::sqrt(p * (1 - p) / reference_samples);
  MESSAGE("crossing fraction ", p, ", refinement change ", change,
          ", reference standard error ", se);
  CHECK(p > 0.0);
  CHECK(std::abs(change) < se);
}

TEST_CASE("refining the oracle step changes little") {
  SUBCASE("open loop") {
    const Scenario s = testing::OpenLoopScenario();
    CheckRefinement(s, *s.disk, 20'000, 1'000'000);
  }
  SUBCASE("closed loop analogue") {
    const Scenario s = testing::ClosedLoopScenario();
    CheckRefinement(s, s.boundary, 10'000, 1'000'000);
  }
}

TEST_CASE("drift-diffusion calibration against the survival function") {
  // Stationary tracking error with strong drift toward a long edge, so
  // re-crossings are negligible and the crossing fraction is the mass
  // beyond the edge at the horizon.
  Scenario s;
  s.plan = PiecewiseLinearPlan({{Point2(0, 0), Vec2(0, 2), 4.0}});
  s.diffusion = Mat2::Identity();
  s.gains = FeedbackGains{Vec2(2, 2), Vec2(4, 4)};
  s.boundary = ConflictBoundary({{{-1000, 6}, {1000, 6}}}, {Vec2(0, -1)});
  s.horizon = 3.1;
  s.dt = 0.01;
  const double c = SteadyStateCovariance(s.DeviationModel(), Vec2(0, 1));
  const double c_v = SteadyStateCovariance(s.DeviationModel())(3, 3);
  REQUIRE(std::sqrt(c_v) <= 2.0 / 5);

  McConfig cfg;
  cfg.n_samples = 100'000;
  cfg.transient = false;
  cfg.seed = 8;
  const McEstimate e = Estimate(s, cfg);
  Reduced1DProcess r;
  r.alpha = 6.0;
  r.mu = 2.0;
  r.law = ConstantVariance{c};
  const double analytic = 0.5 * (1.0 - SurvivalCdf(r, s.horizon));
  CHECK(std::abs(e.probability - analytic) < 3 * e.std_error);
}

TEST_CASE("configuration errors") {
  McConfig cfg;
  cfg.n_samples = 0;
  CHECK_THROWS_AS(Estimate(ShortOpenLoop(), cfg), InvalidArgument);
}

}  // namespace
}  // namespace fptc
