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

#ifndef FPTC_FPTD_HPP_
#define FPTC_FPTD_HPP_

#include "fptc/reduction.hpp"

namespace fptc {

// First-passage time densities of a Reduced1DProcess, built with the method
// of images. All functions work in the oriented frame where the start lies
// below the boundary (alpha > r0); a process starting above it is mirrored
// first, which leaves every density unchanged.
//
// Time is in seconds from the start of the plan; densities are in 1/s.

// erf((alpha - m(t)) / sqrt(2 c(t))) in the oriented frame. Once the mean
// has passed the boundary the same expression continues into [-1, 0).
// Throws DegenerateVariance when c(t) <= 0.
double SurvivalCdf(const Reduced1DProcess& p, double t);

// -dF_S/dt for a generic variance law. Unnormalized: its integral over the
// whole passage is 2. Throws MethodCollapse when mu and dc/dt both vanish,
// NegativeDensity when the process recedes faster than it diffuses.
double FptdGeneral(const Reduced1DProcess& p, double t);

// Normalized density for a constant (steady-state) variance.
// |mu| / sqrt(2 pi c_ss) exp(-(alpha - m(t))^2 / (2 c_ss)); zero at t <= 0.
double FptdClosedLoop(const Reduced1DProcess& p, double t);

// Normalized density for the cubic open-loop variance. Zero at t <= 0;
// throws OutOfValidityDomain at or past 3a/mu.
double FptdOpenLoop(const Reduced1DProcess& p, double t);

// True when the drift carries the mean toward the boundary, or when the
// variance grows (open loop) so diffusion alone reaches it.
bool ApproachTest(const Reduced1DProcess& p);

// 3a/mu for an approaching open-loop process, +inf otherwise.
double ValidityBound(const Reduced1DProcess& p);

// Normalized density for either law, truncated to zero outside (0,
// valid_until).
double FirstPassageDensity(const Reduced1DProcess& p, double t);

// Absorbed position density: the Gaussian minus its mirror image about
// alpha, zero on the far side. Unnormalized.
double ImageDensity(const Reduced1DProcess& p, double r, double t);

}  // namespace fptc

#endif  // FPTC_FPTD_HPP_
