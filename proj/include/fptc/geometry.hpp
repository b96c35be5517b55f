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

#ifndef FPTC_GEOMETRY_HPP_
#define FPTC_GEOMETRY_HPP_

#include <optional>
#include <vector>

#include "fptc/belief.hpp"

namespace fptc {

using Point2 = Vec2;

// Lengths below this are treated as a configuration error.
inline constexpr double kMinSegmentLength = 1e-9;

struct Segment {
  Point2 p1;
  Point2 p2;

  double length() const { return (p2 - p1).norm(); }
  Point2 midpoint() const { return 0.5 * (p1 + p2); }
};

// Throws DegenerateSegment when the endpoints coincide.
void ValidateSegment(const Segment& segment);

// Unit normal of `segment` pointing away from `interior_point`.
Vec2 OutwardNormal(const Segment& segment, const Point2& interior_point);

// Piecewise-straight approximation of a conflict region boundary. Every
// segment carries a unit normal that points out of the conflict region.
class ConflictBoundary {
 public:
  ConflictBoundary() = default;

  // Validates the invariants: non-degenerate segments, unit normals that are
  // perpendicular to their segment.
  ConflictBoundary(std::vector<Segment> segments, std::vector<Vec2> normals);

  // Orients each normal away from `interior_point`.
  static ConflictBoundary FromInteriorPoint(std::vector<Segment> segments,
                                            const Point2& interior_point);

  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }
  const Vec2& normal(std::size_t i) const { return normals_[i]; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Vec2>& normals() const { return normals_; }

  // Smallest circle centred on the endpoint centroid that holds every
  // endpoint. Used to prefilter crossing tests.
  void BoundingCircle(Point2* center, double* radius) const;

 private:
  std::vector<Segment> segments_;
  std::vector<Vec2> normals_;
};

// Exact disk-shaped conflict region. Some baselines and the Monte Carlo
// oracle work on the true region instead of its polygonal approximation.
struct Disk {
  Point2 center = Point2::Zero();
  double radius = 0.0;

  bool Contains(const Point2& p) const {
    return (p - center).squaredNorm() <= radius * radius;
  }
};

// Angular interval in radians, traversed counter-clockwise from start to end.
struct Arc {
  double start_rad = 0.0;
  double end_rad = 0.0;
};

// Inscribed chords of `arc`; endpoints lie on the circle and normals point
// radially outward through each chord midpoint.
ConflictBoundary ApproximateCircle(const Point2& center, double radius,
                                   int n_segments, const Arc& arc);

struct RigidTransform {
  Mat2 rotation = Mat2::Identity();
  Vec2 translation = Vec2::Zero();

  Point2 Apply(const Point2& p) const { return rotation * p + translation; }
  Vec2 ApplyVector(const Vec2& v) const { return rotation * v; }
  RigidTransform Inverse() const;
  RigidTransform Compose(const RigidTransform& inner) const;

  static RigidTransform Rotation(double angle_rad,
                                 const Vec2& translation = Vec2::Zero());
};

// Rotation that makes `segment` horizontal with its normal mapped to +y. The
// translation is zero, so the transformed y of the segment equals the
// segment's offset along the normal.
RigidTransform Horizontalize(const Segment& segment, const Vec2& normal);

Segment TransformSegment(const Segment& s, const RigidTransform& t);

// Affine image of a belief under a rigid motion of the plane.
GaussianBelief TransformBelief(const GaussianBelief& belief,
                               const RigidTransform& t);

// Parameter u in [0, 1] along a0->a1 where it meets segment b0->b1, if the
// two closed segments intersect at a single point.
std::optional<double> IntersectSegments(const Point2& a0, const Point2& a1,
                                        const Point2& b0, const Point2& b1);

// Smallest u in [0, 1] at which a0 + u (a1 - a0) lies in the disk.
std::optional<double> EnterDisk(const Point2& a0, const Point2& a1,
                                const Disk& disk);

}  // namespace fptc

#endif  // FPTC_GEOMETRY_HPP_
