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

#include "fptc/fptd.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fptc/errors.hpp"

namespace fptc {
namespace {

// Oriented quantities: distance a >= 0 from start to boundary, drift toward
// the boundary, and remaining distance d(t) = a - mu t.
struct Oriented {
  double a;
  double mu;
  double d;
};

Oriented Orient(const Reduced1DProcess& p, double t) {
  const double s = p.alpha >= p.r0 ? 1.0 : -1.0;
  return {s * (p.alpha - p.r0), s * p.mu, s * (p.alpha - p.Mean(t))};
}

double CheckedVariance(const Reduced1DProcess& p, double t) {
  const double c = p.Variance(t);
  if (!(c > 0.0)) {
    throw DegenerateVariance("variance " + std::to_string(c) + " at t=" +
                             std::to_string(t));
  }
  return c;
}

}  // namespace

double SurvivalCdf(const Reduced1DProcess& p, double t) {
  const double c = CheckedVariance(p, t);
  return std::erf(Orient(p, t).d / std::sqrt(2.0 * c));
}

double FptdGeneral(const Reduced1DProcess& p, double t) {
  const double c = CheckedVariance(p, t);
  const double c_dot = p.VarianceRate(t);
  const Oriented o = Orient(p, t);
  if (o.mu == 0.0 && c_dot == 0.0) {
    throw MethodCollapse("no drift and constant variance");
  }
  const double bracket = o.d * c_dot / (2.0 * c) + o.mu;
  if (bracket < 0.0) {
    throw NegativeDensity("density bracket " + std::to_string(bracket) +
                          " at t=" + std::to_string(t));
  }
  return std::sqrt(2.0 / (c * std::numbers::pi)) *
         std::exp(-o.d * o.d / (2.0 * c)) * bracket;
}

double FptdClosedLoop(const Reduced1DProcess& p, double t) {
  if (!p.constant_variance()) {
    throw InvalidArgument("closed-loop density needs a constant variance");
  }
  if (p.mu == 0.0) throw MethodCollapse("no drift and constant variance");
  if (t <= 0.0) return 0.0;
  const double c = CheckedVariance(p, t);
  const double d = p.alpha - p.Mean(t);
  return std::abs(p.mu) / std::sqrt(2.0 * std::numbers::pi * c) *
         std::exp(-d * d / (2.0 * c));
}

double FptdOpenLoop(const Reduced1DProcess& p, double t) {
  if (p.constant_variance()) {
    throw InvalidArgument("open-loop density needs the cubic variance law");
  }
  if (t <= 0.0) return 0.0;
  const double bound = ValidityBound(p);
  if (t >= bound) {
    throw OutOfValidityDomain("t=" + std::to_string(t) +
                              " is past the validity bound " +
                              std::to_string(bound));
  }
  const double sigma = std::get<CubicVariance>(p.law).sigma;
  const double c = CheckedVariance(p, t);
  const Oriented o = Orient(p, t);
  return std::exp(-o.d * o.d / (2.0 * c)) * std::sqrt(3.0 * t) *
         std::abs(3.0 * o.a - o.mu * t) /
         (2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma * t * t * t);
}

bool ApproachTest(const Reduced1DProcess& p) {
  if (const auto* c = std::get_if<CubicVariance>(&p.law)) {
    return c->sigma > 0.0;
  }
  return p.mu * (p.alpha - p.r0) > 0.0;
}

double ValidityBound(const Reduced1DProcess& p) {
  if (p.constant_variance()) return std::numeric_limits<double>::infinity();
  const Oriented o = Orient(p, 0.0);
  if (o.mu > 0.0 && o.a > 0.0) return 3.0 * o.a / o.mu;
  return std::numeric_limits<double>::infinity();
}

double FirstPassageDensity(const Reduced1DProcess& p, double t) {
  if (t <= 0.0 || t >= p.valid_until) return 0.0;
  return p.constant_variance() ? FptdClosedLoop(p, t) : FptdOpenLoop(p, t);
}

double ImageDensity(const Reduced1DProcess& p, double r, double t) {
  const double c = CheckedVariance(p, t);
  const double s = p.alpha >= p.r0 ? 1.0 : -1.0;
  // Beyond the boundary the absorbed density is zero.
  if (s * (r - p.alpha) > 0.0) return 0.0;
  const double m = p.Mean(t);
  const double image = 2.0 * p.alpha - m;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * c);
  return norm * (std::exp(-(r - m) * (r - m) / (2.0 * c)) -
                 std::exp(-(r - image) * (r - image) / (2.0 * c)));
}

}  // namespace fptc
