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

#include "fptc/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "fptc/errors.hpp"

namespace fptc {
namespace {

using Clock = std::chrono::steady_clock;

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double NormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// P(lo <= X <= hi) for X ~ N(m, s^2); s = 0 gives the indicator.
double IntervalMass(double lo, double hi, double m, double s) {
  if (hi <= lo) return 0.0;
  if (!(s > 0.0)) return (m >= lo && m <= hi) ? 1.0 : 0.0;
  return NormalCdf((hi - m) / s) - NormalCdf((lo - m) / s);
}

// E[(-V)^+] for V ~ N(m, s^2).
double InwardSpeed(double m, double s) {
  if (!(s > 0.0)) return std::max(-m, 0.0);
  return s * NormalPdf(m / s) - m * NormalCdf(-m / s);
}

// Quantities shared by every node at one time step.
struct StepFrame {
  bool valid = false;
  Vec2 m_r;
  Vec2 m_v;
  Mat2 c_r_inv;
  double pdf_norm = 0.0;
  Mat2 cond_gain;  // Cov(V,R) C_R^-1
  Mat2 cond_cov;   // C_V - Cov(V,R) C_R^-1 Cov(R,V)
  Mat2 c_v;
};

StepFrame MakeFrame(const GaussianBelief& b) {
  StepFrame f;
  const Mat2 c_r = b.position_covariance();
  const double det = c_r.determinant();
  if (!(det > 1e-300) || !(c_r(0, 0) > 0.0)) return f;
  f.valid = true;
  f.m_r = b.position();
  f.m_v = b.velocity();
  f.c_r_inv = c_r.inverse();
  f.pdf_norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  const Mat2 c_vr = b.cross_covariance().transpose();
  f.cond_gain = c_vr * f.c_r_inv;
  f.cond_cov = b.velocity_covariance() - f.cond_gain * b.cross_covariance();
  f.c_v = b.velocity_covariance();
  return f;
}

double PositionPdf(const StepFrame& f, const Point2& r) {
  const Vec2 d = r - f.m_r;
  const double q = d.dot(f.c_r_inv * d);
  if (q > 1490.0) return 0.0;
  return f.pdf_norm * std::exp(-0.5 * q);
}

template <typename FluxFn>
MethodResult IntegrateFlux(const Scenario& scenario, const PfConfig& config,
                           const std::string& method, FluxFn flux) {
  const auto start = Clock::now();
  const std::vector<FluxNode> nodes = PartitionBoundary(scenario, config);
  const double dt = config.dt > 0.0 ? config.dt : scenario.dt;
  const std::vector<double> grid = TimeGrid(scenario.horizon, dt);
  const std::vector<GaussianBelief> beliefs = scenario.Beliefs(grid);

  std::size_t groups = 0;
  for (const auto& n : nodes) groups = std::max(groups, n.group + 1);
  std::vector<double> group_rate(groups, 0.0), prev_rate(groups, 0.0),
      integral(groups, 0.0);

  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::fill(group_rate.begin(), group_rate.end(), 0.0);
    const StepFrame f = MakeFrame(beliefs[k]);
    if (f.valid) {
      for (const auto& node : nodes) {
        const double p = PositionPdf(f, node.position);
        if (p == 0.0) continue;
        group_rate[node.group] += node.weight * flux(f, node, p, grid[k]);
      }
    }
    if (k > 0) {
      const double h = grid[k] - grid[k - 1];
      for (std::size_t g = 0; g < groups; ++g) {
        integral[g] += 0.5 * h * (prev_rate[g] + group_rate[g]);
      }
    }
    prev_rate.swap(group_rate);
  }

  MethodResult r;
  r.method = method;
  r.partition = config.Label();
  double total = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    r.per_segment.push_back({g, integral[g], kDiagNone});
    total += integral[g];
  }
  r.probability = std::clamp(total, 0.0, 1.0);
  r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

std::string PfConfig::Label() const {
  std::ostringstream os;
  if (intervals > 0) {
    os << intervals;
  } else {
    os << interval_length_m << " m";
  }
  return os.str();
}

std::vector<FluxNode> PartitionBoundary(const Scenario& scenario,
                                        const PfConfig& config) {
  std::vector<FluxNode> nodes;
  if (config.intervals > 0) {
    if (!scenario.disk) {
      throw InvalidArgument(
          "an interval count needs a circular region; use an interval length");
    }
    const Disk& d = *scenario.disk;
    const int n = config.intervals;
    const double weight = 2.0 * std::numbers::pi * d.radius / n;
    for (int i = 0; i < n; ++i) {
      const double th = (i + 0.5) * 2.0 * std::numbers::pi / n;
      const Vec2 u(std::cos(th), std::sin(th));
      nodes.push_back({d.center + d.radius * u, u, weight,
                       static_cast<std::size_t>(i)});
    }
    return nodes;
  }
  if (!(config.interval_length_m > 0.0)) {
    throw InvalidArgument("partition needs an interval count or length");
  }
  for (std::size_t s = 0; s < scenario.boundary.size(); ++s) {
    const Segment& seg = scenario.boundary.segment(s);
    const double len = seg.length();
    const int m = std::max(
        1, static_cast<int>(std::ceil(len / config.interval_length_m - 1e-9)));
    for (int j = 0; j < m; ++j) {
      const double u = (j + 0.5) / m;
      nodes.push_back({seg.p1 + u * (seg.p2 - seg.p1),
                       scenario.boundary.normal(s), len / m, s});
    }
  }
  return nodes;
}

double ParkBeta(double mean, double stddev) {
  if (!(stddev > 0.0)) return std::min(mean, 0.0);
  return mean * NormalCdf(-mean / stddev) - stddev * NormalPdf(mean / stddev);
}

MethodResult PfVdj(const Scenario& scenario, const PfConfig& config) {
  return IntegrateFlux(
      scenario, config, "pf_vdj",
      [](const StepFrame& f, const FluxNode& node, double p, double) {
        const Vec2& n = node.normal;
        const double m =
            n.dot(f.m_v) + n.dot(f.cond_gain * (node.position - f.m_r));
        const double s = std::sqrt(std::max(0.0, n.dot(f.cond_cov * n)));
        return p * InwardSpeed(m, s);
      });
}

MethodResult PfPark(const Scenario& scenario, const PfConfig& config,
                    ParkVariant variant) {
  const bool altered = variant == ParkVariant::kAltered;
  return IntegrateFlux(
      scenario, config, altered ? "pf_park_altered" : "pf_park_published",
      [altered](const StepFrame& f, const FluxNode& node, double p, double t) {
        const Vec2& n = node.normal;
        const double vn = n.dot(f.m_v);
        double drift;
        if (altered) {
          drift = -ParkBeta(vn, std::sqrt(std::max(0.0, n.dot(f.c_v * n))));
        } else {
          drift = std::max(0.0, -vn);
        }
        const double diffusion = n.dot(f.m_r - node.position) / (2.0 * t);
        return p * (drift + diffusion);
      });
}

double IcpDiskMass(const Vec2& mean, const Mat2& cov, const Disk& disk,
                   int n_rectangles) {
  if (n_rectangles < 1) throw InvalidArgument("need at least one rectangle");
  const Eigen::SelfAdjointEigenSolver<Mat2> eig(cov);
  const Mat2 u = eig.eigenvectors();
  const Vec2 m = u.transpose() * (mean - disk.center);
  const Vec2 s = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const double r = disk.radius;
  const double w = 2.0 * r / n_rectangles;
  double mass = 0.0;
  for (int i = 0; i < n_rectangles; ++i) {
    const double a = -r + i * w;
    const double b = a + w;
    const double c = 0.5 * (a + b);
    const double h = std::sqrt(std::max(0.0, r * r - c * c));
    if (h == 0.0) continue;
    mass += IntervalMass(a, b, m.x(), s.x()) *
            IntervalMass(-h, h, m.y(), s.y());
  }
  return std::clamp(mass, 0.0, 1.0);
}

double IcpPour(const Scenario& scenario, const IcpConfig& config, double t) {
  if (!scenario.disk) {
    throw UnsupportedRegion("instantaneous conflict needs a circular region");
  }
  const std::vector<double> grid =
      t > 0.0 ? std::vector<double>{0.0, t} : std::vector<double>{0.0};
  const GaussianBelief b = scenario.Beliefs(grid).back();
  return IcpDiskMass(b.position(), b.position_covariance(), *scenario.disk,
                     config.n_rectangles);
}

double AccumulateIcp(const std::vector<double>& icp, IcpMode mode) {
  if (icp.empty()) return 0.0;
  switch (mode) {
    case IcpMode::kMax:
      return *std::max_element(icp.begin(), icp.end());
    case IcpMode::kAccLast: {
      double p = icp[0];
      for (std::size_t k = 1; k < icp.size(); ++k) p += icp[k] * (1.0 - p);
      return std::clamp(p, 0.0, 1.0);
    }
    case IcpMode::kAccAll: {
      double p = icp[0];
      double survive = 1.0 - p;  // prod over i <= k of (1 - P[i])
      for (std::size_t k = 1; k < icp.size(); ++k) {
        p += icp[k] * survive;
        survive *= 1.0 - p;
      }
      return std::clamp(p, 0.0, 1.0);
    }
  }
  return 0.0;
}

MethodResult IcpToConflict(const Scenario& scenario, const IcpConfig& config,
                           IcpMode mode) {
  const auto start = Clock::now();
  if (!scenario.disk) {
    throw UnsupportedRegion("instantaneous conflict needs a circular region");
  }
  if (!(config.accumulation_period > 0.0)) {
    throw InvalidArgument("accumulation period must be positive");
  }
  const auto steps = static_cast<std::size_t>(
      std::floor(scenario.horizon / config.accumulation_period + 1e-9));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = static_cast<double>(k) * config.accumulation_period;
  }
  const std::vector<GaussianBelief> beliefs = scenario.Beliefs(grid);
  std::vector<double> icp(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    icp[k] = IcpDiskMass(beliefs[k].position(),
                         beliefs[k].position_covariance(), *scenario.disk,
                         config.n_rectangles);
  }
  MethodResult r;
  r.method = mode == IcpMode::kMax       ? "icp_max"
             : mode == IcpMode::kAccLast ? "icp_acc_last"
                                         : "icp_acc_all";
  r.partition = std::to_string(config.n_rectangles);
  r.probability = AccumulateIcp(icp, mode);
  r.per_segment.push_back({0, r.probability, kDiagNone});
  r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace fptc
