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

#include "fptc/oracle.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "fptc/errors.hpp"
#include "fptc/parallel.hpp"

namespace fptc {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Square-root factor of a PSD matrix; tolerates singular matrices.
Mat4 Factor(const Mat4& c) {
  if (c.isZero(0.0)) return Mat4::Zero();
  const Eigen::LLT<Mat4> llt(c);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  const Eigen::SelfAdjointEigenSolver<Mat4> eig(c);
  return eig.eigenvectors() *
         eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

// Everything a worker needs to generate paths, shared read-only.
struct Simulator {
  std::vector<double> t;
  std::vector<Point2> plan;
  Mat4 transition;
  Mat4 step_factor;     // factor of the per-step noise covariance
  Mat4 initial_factor;  // factor of the initial deviation covariance
  Mat4 tail_transition;  // last step when shorter than dt
  Mat4 tail_factor;
  bool has_tail = false;

  Simulator(const Scenario& s, const McConfig& cfg) {
    const double dt = cfg.dt > 0.0 ? cfg.dt : s.dt;
    t = TimeGrid(s.horizon, dt);
    plan.reserve(t.size());
    for (double tk : t) {
      plan.push_back(s.plan.Sample(std::min(tk, s.plan.duration())).position);
    }
    const LtiModel model = s.DeviationModel();
    const Discretization d = Discretize(model, dt);
    transition = d.transition;
    step_factor = Factor(d.process_noise);
    initial_factor = Mat4::Zero();
    if (s.closed_loop() && !cfg.transient) {
      initial_factor = Factor(SteadyStateCovariance(model));
    }
    if (t.size() >= 2) {
      const double last = t.back() - t[t.size() - 2];
      if (std::abs(last - dt) > 1e-12 * dt) {
        const Discretization tail = Discretize(model, last);
        tail_transition = tail.transition;
        tail_factor = Factor(tail.process_noise);
        has_tail = true;
      }
    }
  }

  // Calls visit(k, position) for every grid point until it returns true.
  template <typename Visit>
  void Walk(std::uint64_t seed, Visit&& visit) const {
    boost::random::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> normal;
    auto draw = [&] {
      Vec4 z;
      for (int i = 0; i < 4; ++i) z[i] = normal(rng);
      return z;
    };
    Vec4 e = initial_factor.isZero(0.0) ? Vec4::Zero()
                                        : Vec4(initial_factor * draw());
    if (visit(0, plan[0] + e.head<2>())) return;
    const std::size_t n = t.size();
    for (std::size_t k = 1; k < n; ++k) {
      if (has_tail && k + 1 == n) {
        e = tail_transition * e + tail_factor * draw();
      } else {
        e = transition * e + step_factor * draw();
      }
      if (visit(k, plan[k] + e.head<2>())) return;
    }
  }
};

// Crossing test against a fixed region for one step a0 -> a1; returns the
// step fraction or a negative value.
class RegionTest {
 public:
  RegionTest(const Scenario& s, bool exact) {
    if (exact && s.disk) {
      disk_ = *s.disk;
    } else {
      boundary_ = &s.boundary;
      boundary_->BoundingCircle(&center_, &radius_);
    }
  }

  bool StartsInside(const Point2& p) const {
    return disk_ && disk_->Contains(p);
  }

  double Step(const Point2& a0, const Point2& a1) const {
    if (disk_) {
      const auto u = EnterDisk(a0, a1, *disk_);
      return u ? *u : -1.0;
    }
    const double reach = radius_ + (a1 - a0).norm();
    if ((a0 - center_).squaredNorm() > reach * reach) return -1.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& seg : boundary_->segments()) {
      const auto u = IntersectSegments(a0, a1, seg.p1, seg.p2);
      if (u && *u < best) best = *u;
    }
    return std::isfinite(best) ? best : -1.0;
  }

 private:
  std::optional<Disk> disk_;
  const ConflictBoundary* boundary_ = nullptr;
  Point2 center_ = Point2::Zero();
  double radius_ = 0.0;
};

}  // namespace

std::uint64_t PathSeed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(index + 0x632be59bd9b4e019ULL));
}

SampledPath SampleTrajectory(const Scenario& scenario, const McConfig& config,
                             std::uint64_t index) {
  const Simulator sim(scenario, config);
  SampledPath path;
  path.t = sim.t;
  path.position.reserve(sim.t.size());
  sim.Walk(PathSeed(config.seed, index), [&](std::size_t, const Point2& p) {
    path.position.push_back(p);
    return false;
  });
  return path;
}

std::optional<double> FirstCrossing(const SampledPath& path,
                                    const ConflictBoundary& boundary) {
  for (std::size_t k = 0; k + 1 < path.position.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& seg : boundary.segments()) {
      const auto u = IntersectSegments(path.position[k], path.position[k + 1],
                                       seg.p1, seg.p2);
      if (u && *u < best) best = *u;
    }
    if (std::isfinite(best)) {
      return path.t[k] + best * (path.t[k + 1] - path.t[k]);
    }
  }
  return std::nullopt;
}

std::optional<double> FirstCrossing(const SampledPath& path, const Disk& disk) {
  if (path.position.empty()) return std::nullopt;
  if (disk.Contains(path.position[0])) return path.t[0];
  for (std::size_t k = 0; k + 1 < path.position.size(); ++k) {
    const auto u = EnterDisk(path.position[k], path.position[k + 1], disk);
    if (u) return path.t[k] + *u * (path.t[k + 1] - path.t[k]);
  }
  return std::nullopt;
}

McEstimate Estimate(const Scenario& scenario, const McConfig& config) {
  if (config.n_samples < 1) throw InvalidArgument("need at least one sample");
  const auto start = std::chrono::steady_clock::now();
  const Simulator sim(scenario, config);
  const RegionTest region(scenario, config.exact_region);

  const int threads = ResolveThreads(config.threads);
  // Fixed block size so the partition of work never affects the result.
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (config.n_samples + kBlock - 1) / kBlock;
  std::vector<std::size_t> block_hits(blocks, 0);
  ParallelFor(blocks, threads, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t first = b * kBlock;
      const std::size_t last = std::min(config.n_samples, first + kBlock);
      std::size_t hits = 0;
      for (std::size_t i = first; i < last; ++i) {
        bool hit = false;
        Point2 prev;
        sim.Walk(PathSeed(config.seed, i), [&](std::size_t k, const Point2& p) {
          if (k == 0) {
            prev = p;
            hit = region.StartsInside(p);
            return hit;
          }
          hit = region.Step(prev, p) >= 0.0;
          prev = p;
          return hit;
        });
        hits += hit ? 1 : 0;
      }
      block_hits[b] = hits;
    }
  });

  McEstimate est;
  est.n_samples = config.n_samples;
  for (std::size_t h : block_hits) est.hits += h;
  const double n = static_cast<double>(est.n_samples);
  est.probability = static_cast<double>(est.hits) / n;
  est.std_error = std::sqrt(est.probability * (1.0 - est.probability) / n);
  est.runtime_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return est;
}

}  // namespace fptc
