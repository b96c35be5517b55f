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
#include <numbers>
#include <random>

#include <Eigen/Cholesky>

#include "doctest.h"
#include "fptc/conflict.hpp"
#include "fptc/errors.hpp"
#include "fptc/fptd.hpp"
#include "test_util.hpp"

namespace fptc {
namespace {

GaussianBelief Horizontal(const Vec2& mean, const Mat2& cov) {
  GaussianBelief b;
  b.mean.head<2>() = mean;
  b.covariance.topLeftCorner<2, 2>() = cov;
  return b;
}

// Splits every segment into two collinear halves.
ConflictBoundary SplitAll(const ConflictBoundary& b) {
  std::vector<Segment> segs;
  std::vector<Vec2> normals;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Segment& s = b.segment(i);
    segs.push_back({s.p1, s.midpoint()});
    segs.push_back({s.midpoint(), s.p2});
    normals.push_back(b.normal(i));
    normals.push_back(b.normal(i));
  }
  return ConflictBoundary(std::move(segs), std::move(normals));
}

TEST_CASE("conditional moments") {
  SUBCASE("independent coordinates") {
    const ScalarGaussian c = ConditionalMoments(
        Horizontal({1.5, -2}, Vec2(3, 4).asDiagonal()), 7.0);
    CHECK(c.mean == 1.5);
    CHECK(c.variance == 3.0);
  }
  SUBCASE("perfect correlation") {
    Mat2 cov;
    cov << 4, 6, 6, 9;
    const ScalarGaussian c = ConditionalMoments(Horizontal({0, 0}, cov), 3.0);
    CHECK(c.variance == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.mean == doctest::Approx(2.0));
  }
  SUBCASE("degenerate normal variance") {
    CHECK_THROWS_AS(
        ConditionalMoments(Horizontal({0, 0}, Vec2(1, 1e-16).asDiagonal()), 0),
        DegenerateVariance);
  }
  SUBCASE("rejection sampling") {
    Mat2 cov;
    cov << 2.0, 0.9, 0.9, 1.5;
    const Vec2 mean(0.3, -0.4);
    const double y_c = 0.8;
    const double eps = 0.01;
    const ScalarGaussian c = ConditionalMoments(Horizontal(mean, cov), y_c);
    const Eigen::LLT<Mat2> llt(cov);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n;
    double s1 = 0, s2 = 0;
    int kept = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      const Vec2 x = mean + llt.matrixL() * Vec2(n(rng), n(rng));
      if (std::abs(x.y() - y_c) >= eps) continue;
      s1 += x.x();
      s2 += x.x() * x.x();
      ++kept;
    }
    REQUIRE(kept > 1000);
    const double m = s1 / kept;
    const double v = s2 / kept - m * m;
    CHECK(std::abs(m - c.mean) < 3 * std::sqrt(c.variance / kept));
    CHECK(std::abs(v - c.variance) < 3 * c.variance * std::sqrt(2.0 / kept));
  }
}

TEST_CASE("segment mass") {
  const ScalarGaussian g{1.0, 0.7};
  const double l = 0.9;
  CHECK(SegmentMass(g, 1.0 - l, 1.0 + l) ==
        doctest::Approx(std::erf(l / std::sqrt(2 * 0.7))));
  CHECK(SegmentMass(g, 2.0, 2.0) == 0.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    double x[3] = {u(rng), u(rng), u(rng)};
    std::sort(x, x + 3);
    REQUIRE(std::abs(SegmentMass(g, x[0], x[1]) + SegmentMass(g, x[1], x[2]) -
                     SegmentMass(g, x[0], x[2])) < 1e-14);
  }
  CHECK(SegmentMass({0.5, 0.0}, 0.0, 1.0) == 1.0);
  CHECK(SegmentMass({1.5, 0.0}, 0.0, 1.0) == 0.0);
}

TEST_CASE("an unbounded segment integrates the whole first-passage density") {
  ConflictQuery q;
  q.plan = PiecewiseLinearPlan({{Point2(0, 0), Vec2(0.3, 1.0), 12.0}});
  q.model = ClosedLoop{Vec2(0.05, 0.02).asDiagonal()};
  q.boundary = ConflictBoundary({{{-1e6, 8.0}, {1e6, 8.0}}}, {Vec2(0, 1)});
  q.horizon = 10.0;
  q.dt = 0.001;
  const double p = SegmentConflictProbability(q, 0);
  Reduced1DProcess r;
  r.alpha = 8.0;
  r.mu = 1.0;
  r.law = ConstantVariance{0.02};
  CHECK(p == doctest::Approx(0.5 * (1 - SurvivalCdf(r, 10.0))).epsilon(1e-6));
}

TEST_CASE("open-loop scenario properties") {
  const Scenario s = testing::OpenLoopScenario();
  const MethodResult base = BoundaryConflictProbability(s.Query());

  SUBCASE("result is a probability and sums its segments") {
    CHECK(base.probability >= 0.0);
    CHECK(base.probability <= 1.0);
    double sum = 0.0;
    for (const auto& seg : base.per_segment) {
      CHECK(seg.probability >= 0.0);
      sum += seg.probability;
    }
    CHECK(std::abs(base.probability - std::min(1.0, sum)) < 1e-12);
  }
  SUBCASE("halving the step barely changes the result") {
    ConflictQuery q = s.Query();
    q.dt /= 2;
    CHECK(std::abs(BoundaryConflictProbability(q).probability -
                   base.probability) < 1e-4);
  }
  SUBCASE("step refinement converges") {
    double prev_gap = 1.0;
    ConflictQuery q = s.Query();
    q.dt = 0.06;
    double prev = BoundaryConflictProbability(q).probability;
    for (int i = 0; i < 3; ++i) {
      q.dt /= 2;
      const double cur = BoundaryConflictProbability(q).probability;
      const double gap = std::abs(cur - prev);
      CHECK(gap <= prev_gap);
      prev_gap = gap;
      prev = cur;
    }
  }
  SUBCASE("collinear splitting leaves the total unchanged") {
    ConflictQuery q = s.Query();
    q.boundary = SplitAll(q.boundary);
    CHECK(std::abs(BoundaryConflictProbability(q).probability -
                   base.probability) < 1e-10);
  }
  SUBCASE("rigid transforms leave the total unchanged") {
    for (double angle : {0.3, 1.7, -2.9}) {
      const Scenario t = TransformScenario(
          s, RigidTransform::Rotation(angle, Vec2(-40, 13)));
      CHECK(std::abs(BoundaryConflictProbability(t.Query()).probability -
                     base.probability) < 1e-10);
    }
  }
  SUBCASE("monotone in the horizon") {
    double prev = 0.0;
    for (double h = 1.5; h <= 15.0; h += 1.5) {
      ConflictQuery q = s.Query();
      q.horizon = h;
      const double p = BoundaryConflictProbability(q).probability;
      CHECK(p >= prev);
      prev = p;
    }
  }
  SUBCASE("parallel evaluation is bit-identical") {
    const ConflictPredictor pred(s.Query());
    const MethodResult one = pred.Run(1);
    for (int threads : {2, 3, 8}) {
      const MethodResult many = pred.Run(threads);
      CHECK(std::memcmp(&one.probability, &many.probability, sizeof(double)) ==
            0);
      for (std::size_t i = 0; i < one.per_segment.size(); ++i) {
        CHECK(one.per_segment[i].probability ==
              many.per_segment[i].probability);
      }
    }
  }
}

TEST_CASE("closed-loop scenario properties") {
  const Scenario s = testing::ClosedLoopScenario();
  const MethodResult base = BoundaryConflictProbability(s.Query());
  CHECK(base.probability > 0.0);
  CHECK(base.probability < 1.0);
  // The first leg runs slightly upward, away from the top edge.
  CHECK((base.per_segment[1].diagnostics & kDiagSkippedStage) != 0);

  ConflictQuery q = s.Query();
  q.boundary = SplitAll(q.boundary);
  CHECK(std::abs(BoundaryConflictProbability(q).probability -
                 base.probability) < 1e-10);
  const Scenario t =
      TransformScenario(s, RigidTransform::Rotation(0.8, Vec2(5, 5)));
  CHECK(std::abs(BoundaryConflictProbability(t.Query()).probability -
                 base.probability) < 1e-10);
}

TEST_CASE("receding vehicle has no conflict") {
  ConflictQuery q;
  q.plan = PiecewiseLinearPlan({{Point2(0, 0), Vec2(0, -1), 10.0}});
  q.model = ClosedLoop{Mat2::Identity() * 0.1};
  q.boundary = ConflictBoundary::FromInteriorPoint(
      {{{-1, 2}, {1, 2}}, {{1, 2}, {1, 4}}, {{-1, 2}, {-1, 4}}}, {0, 3});
  q.horizon = 10.0;
  q.dt = 0.01;
  const MethodResult r = BoundaryConflictProbability(q);
  CHECK(r.probability == 0.0);
  CHECK((r.per_segment[0].diagnostics & kDiagSkippedStage) != 0);
}

TEST_CASE("validity truncation is reported") {
  ConflictQuery q;
  q.plan = PiecewiseLinearPlan({{Point2(20, 0), Vec2(-10, 0), 15.0}});
  q.model = OpenLoop{Mat2::Identity()};
  q.boundary = ConflictBoundary({{{5, -5}, {5, 5}}}, {Vec2(1, 0)});
  q.horizon = 15.0;
  q.dt = 0.015;
  const MethodResult r = BoundaryConflictProbability(q);
  CHECK((r.per_segment[0].diagnostics & kDiagValidityTruncated) != 0);
  CHECK(r.probability > 0.9);
  CHECK(r.probability <= 1.0);
}

TEST_CASE("query validation") {
  ConflictQuery q = testing::OpenLoopScenario().Query();
  q.dt = 0.0;
  CHECK_THROWS_AS(q.Validate(), InvalidArgument);
  q.dt = 20.0;
  CHECK_THROWS_AS(q.Validate(), InvalidArgument);
  q.dt = 0.015;
  q.horizon = 16.0;
  CHECK_THROWS_AS(q.Validate(), InvalidArgument);
}

}  // namespace
}  // namespace fptc
