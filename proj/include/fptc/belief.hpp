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

#ifndef FPTC_BELIEF_HPP_
#define FPTC_BELIEF_HPP_

#include <Eigen/Core>

namespace fptc {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Joint Gaussian over [position; velocity] at one time instant. The state
// layout is fixed: indices 0-1 hold position (m), 2-3 hold velocity (m/s).
struct GaussianBelief {
  double time = 0.0;
  Vec4 mean = Vec4::Zero();
  Mat4 covariance = Mat4::Zero();

  Vec2 position() const { return mean.head<2>(); }
  Vec2 velocity() const { return mean.tail<2>(); }
  Mat2 position_covariance() const { return covariance.topLeftCorner<2, 2>(); }
  Mat2 velocity_covariance() const {
    return covariance.bottomRightCorner<2, 2>();
  }
  // Cov(R, V).
  Mat2 cross_covariance() const { return covariance.topRightCorner<2, 2>(); }
};

}  // namespace fptc

#endif  // FPTC_BELIEF_HPP_
