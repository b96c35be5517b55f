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
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include "doctest.h"
#include "fptc/baselines.hpp"
#include "fptc/errors.hpp"
#include "test_util.hpp"

namespace fptc {
namespace {

TEST_CASE("park drift term") {
  CHECK(ParkBeta(0.0, 1.0) ==
        doctest::Approx(-1.0 / std::sqrt(2 * std::numbers::pi)));
  CHECK(std::abs(ParkBeta(50.0, 1.0)) < 1e-12);
  CHECK(ParkBeta(-50.0, 1.0) == doctest::Approx(-50.0));
  CHECK(ParkBeta(-2.0, 0.0) == -2.0);
  CHECK(ParkBeta(2.0, 0.0) == 0.0);
  for (double m = -3.0; m <= 3.0; m += 0.25) {
    CHECK(ParkBeta(m, 0.7) <= std::min(m, 0.0) + 1e-15);
  }
}

TEST_CASE("flux vanishes without motion or noise") {
  Scenario s;
  s.plan = PiecewiseLinearPlan({{Point2(20, 0), Vec2(0, 0), 5.0}});
  s.diffusion = Mat2::Zero();
  s.boundary = ApproximateCircle(Point2::Zero(), 5.0, 6,
                                 {-std::numbers::pi / 2, std::numbers::pi / 2});
  s.disk = Disk{Point2::Zero(), 5.0};
  s.horizon = 5.0;
  s.dt = 0.05;
  const PfConfig cfg{20, 0.0, 0.0};
  CHECK(PfVdj(s, cfg).probability == 0.0);
  CHECK(PfPark(s, cfg, ParkVariant::kPublished).probability == 0.0);
  CHECK(PfPark(s, cfg, ParkVariant::kAltered).probability == 0.0);
}

TEST_CASE("partitioning") {
  const Scenario s = testing::OpenLoopScenario();
  const std::vector<FluxNode> nodes = PartitionBoundary(s, {20, 0.0, 0.0});
  REQUIRE(nodes.size() == 20);
  double len = 0.0;
  for (const FluxNode& n : nodes) {
    CHECK(n.position.norm() == doctest::Approx(5.0));
    CHECK(n.normal.dot(n.position.normalized()) == doctest::Approx(1.0));
    len += n.weight;
  }
  CHECK(len == doctest::Approx(2 * std::numbers::pi * 5.0));

  const Scenario c = testing::ClosedLoopScenario();
  double total = 0.0;
  for (std::size_t i = 0; i < c.boundary.size(); ++i) {
    total += c.boundary.segment(i).length();
  }
  double sum = 0.0;
  for (const FluxNode& n : PartitionBoundary(c, {0, 0.05, 0.0})) {
    CHECK(n.weight <= 0.05 + 1e-12);
    sum += n.weight;
  }
  CHECK(sum == doctest::Approx(total));
  CHECK_THROWS_AS(PartitionBoundary(c, {0, 0.0, 0.0}), InvalidArgument);
}

TEST_CASE("instantaneous disk mass") {
  const Disk d{Point2(1, -2), 5.0};
  CHECK(IcpDiskMass(Vec2(1, -2), Mat2::Identity() * 1e-12, d, 20) ==
        doctest::Approx(1.0));
  const double sigma = 0.1;
  CHECK(IcpDiskMass(Vec2(1 + 5 + 10 * sigma, -2),
                    Mat2::Identity() * sigma * sigma, d, 20) < 1e-20);
  CHECK_THROWS_AS(IcpDiskMass(Vec2::Zero(), Mat2::Identity(), d, 0),
                  InvalidArgument);
}

TEST_CASE("instantaneous disk mass matches the radial distribution") {
  // Isotropic beliefs along the open-loop trajectory; the squared distance to
  // the center divided by the variance is noncentral chi-square.
  const Scenario s = testing::OpenLoopScenario();
  std::vector<double> grid{0.0};
  for (int k = 1; k <= 100; ++k) grid.push_back(0.15 * k);
  const std::vector<GaussianBelief> beliefs = s.Beliefs(grid);
  int compared = 0;
  for (std::size_t k = 1; k < beliefs.size(); ++k) {
    const double v = beliefs[k].position_covariance().trace() / 2;
    const Vec2 m = beliefs[k].position();
    const double exact =
        boost::math::cdf(boost::math::non_central_chi_squared(
                             2.0, m.squaredNorm() / v),
                         25.0 / v);
    if (exact < 1e-4) continue;
    ++compared;
    const double icp = IcpDiskMass(m, Mat2::Identity() * v, *s.disk, 20);
    CHECK(std::abs(icp - exact) < 0.01 * exact);
  }
  CHECK(compared > 20);
}

TEST_CASE("accumulation") {
  for (IcpMode mode : {IcpMode::kMax, IcpMode::kAccLast, IcpMode::kAccAll}) {
    CHECK(AccumulateIcp({0.0, 0.0, 0.3, 0.0}, mode) == doctest::Approx(0.3));
    CHECK(AccumulateIcp({}, mode) == 0.0);
  }
  const std::vector<double> icp{0.1, 0.2, 0.3};
  CHECK(AccumulateIcp(icp, IcpMode::kMax) == 0.3);
  // 0.1 + 0.2 * 0.9 = 0.28, then 0.28 + 0.3 * 0.72.
  CHECK(AccumulateIcp(icp, IcpMode::kAccLast) == doctest::Approx(0.496));
  // 0.1 + 0.2 * 0.9 = 0.28, then 0.28 + 0.3 * 0.9 * 0.72.
  CHECK(AccumulateIcp(icp, IcpMode::kAccAll) == doctest::Approx(0.4744));
}

TEST_CASE("instantaneous conflict ordering holds on every grid") {
  const Scenario s = testing::OpenLoopScenario();
  for (double period : {0.015, 0.05, 0.15, 0.3, 0.75}) {
    const IcpConfig cfg{20, period};
    const double mx = IcpToConflict(s, cfg, IcpMode::kMax).probability;
    const double all = IcpToConflict(s, cfg, IcpMode::kAccAll).probability;
    const double last = IcpToConflict(s, cfg, IcpMode::kAccLast).probability;
    CHECK(mx <= all);
    CHECK(all <= last);
    CHECK(last <= 1.0);
  }
  CHECK(IcpPour(s, {}, 0.0) == 0.0);
  CHECK_THROWS_AS(
      IcpToConflict(testing::ClosedLoopScenario(), {}, IcpMode::kMax),
      UnsupportedRegion);
  CHECK_THROWS_AS(IcpToConflict(s, {20, 0.0}, IcpMode::kMax), InvalidArgument);
}

TEST_CASE("flow results grow with the horizon") {
  const Scenario base = testing::OpenLoopScenario();
  double prev[3] = {0.0, 0.0, 0.0};
  for (double h = 3.0; h <= 15.0; h += 3.0) {
    Scenario s = base;
    s.horizon = h;
    const double now[3] = {
        PfVdj(s, {20, 0.0, 0.0}).probability,
        PfPark(s, {20, 0.0, 0.0}, ParkVariant::kPublished).probability,
        PfPark(s, {20, 0.0, 0.0}, ParkVariant::kAltered).probability};
    for (int i = 0; i < 3; ++i) {
      CHECK(now[i] >= prev[i]);
      prev[i] = now[i];
    }
  }
}

template <typename F>
void CheckRefinementConverges(const Scenario& s, PfConfig cfg, F method) {
  double prev = method(s, cfg).probability;
  double prev_gap = INFINITY;
  for (int i = 0; i < 3; ++i) {
    if (cfg.intervals > 0) {
      cfg.intervals *= 2;
    } else {
      cfg.interval_length_m /= 2;
    }
    const double cur = method(s, cfg).probability;
    const double gap = std::abs(cur - prev);
    // Below 1e-12 the gaps are rounding noise.
    CHECK((gap <= prev_gap || gap < 1e-12));
    prev_gap = gap;
    prev = cur;
  }
}

const auto kVdj = [](const Scenario& s, const PfConfig& c) {
  return PfVdj(s, c);
};
const auto kPublished = [](const Scenario& s, const PfConfig& c) {
  return PfPark(s, c, ParkVariant::kPublished);
};
const auto kAltered = [](const Scenario& s, const PfConfig& c) {
  return PfPark(s, c, ParkVariant::kAltered);
};

TEST_CASE("flow spatial refinement converges") {
  SUBCASE("open loop, smooth flux") {
    const Scenario s = testing::OpenLoopScenario();
    for (int n : {15, 20}) {
      CheckRefinementConverges(s, {n, 0.0, 0.0}, kVdj);
      CheckRefinementConverges(s, {n, 0.0, 0.0}, kAltered);
    }
  }
  SUBCASE("closed loop") {
    const Scenario s = testing::ClosedLoopScenario();
    for (double h : {0.15, 0.1, 0.05}) {
      CheckRefinementConverges(s, {0, h, 0.0}, kVdj);
      CheckRefinementConverges(s, {0, h, 0.0}, kPublished);
      CheckRefinementConverges(s, {0, h, 0.0}, kAltered);
    }
  }
}

TEST_CASE("method labels") {
  const Scenario s = testing::OpenLoopScenario();
  CHECK(PfVdj(s, {20, 0.0, 0.0}).method == "pf_vdj");
  CHECK(PfPark(s, {20, 0.0, 0.0}, ParkVariant::kAltered).method ==
        "pf_park_altered");
  CHECK(PfConfig{20, 0.0, 0.0}.Label() == "20");
  CHECK(IcpToConflict(s, {}, IcpMode::kAccAll).method == "icp_acc_all");
}

}  // namespace
}  // namespace fptc
