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

#include "fptc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fptc/errors.hpp"

namespace fptc {
namespace {

double Cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

void ValidateSegment(const Segment& segment) {
  if (!segment.p1.allFinite() || !segment.p2.allFinite()) {
    throw DegenerateSegment("segment has non-finite coordinates");
  }
  if (segment.length() < kMinSegmentLength) {
    throw DegenerateSegment("segment endpoints coincide");
  }
}

Vec2 OutwardNormal(const Segment& segment, const Point2& interior_point) {
  ValidateSegment(segment);
  const Vec2 d = (segment.p2 - segment.p1) / segment.length();
  Vec2 n(d.y(), -d.x());
  const double offset = n.dot(interior_point - segment.p1);
  if (std::abs(offset) <= 1e-9) {
    throw AmbiguousSide("interior point lies on the segment's supporting line");
  }
  if (offset > 0.0) n = -n;
  return n;
}

ConflictBoundary::ConflictBoundary(std::vector<Segment> segments,
                                   std::vector<Vec2> normals)
    : segments_(std::move(segments)), normals_(std::move(normals)) {
  if (segments_.size() != normals_.size()) {
    throw InvalidArgument("boundary needs exactly one normal per segment");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    ValidateSegment(segments_[i]);
    const Vec2& n = normals_[i];
    if (std::abs(n.norm() - 1.0) > 1e-12) {
      throw InvalidArgument("normal " + std::to_string(i) +
                            " is not unit length");
    }
    const Vec2 d = (segments_[i].p2 - segments_[i].p1) / segments_[i].length();
    if (std::abs(n.dot(d)) > 1e-12) {
      throw InvalidArgument("normal " + std::to_string(i) +
                            " is not perpendicular to its segment");
    }
  }
}

ConflictBoundary ConflictBoundary::FromInteriorPoint(
    std::vector<Segment> segments, const Point2& interior_point) {
  std::vector<Vec2> normals;
  normals.reserve(segments.size());
  for (const Segment& s : segments) {
    normals.push_back(OutwardNormal(s, interior_point));
  }
  return ConflictBoundary(std::move(segments), std::move(normals));
}

void ConflictBoundary::BoundingCircle(Point2* center, double* radius) const {
  Point2 c = Point2::Zero();
  if (segments_.empty()) {
    *center = c;
    *radius = 0.0;
    return;
  }
  for (const Segment& s : segments_) c += s.p1 + s.p2;
  c /= 2.0 * static_cast<double>(segments_.size());
  double r = 0.0;
  for (const Segment& s : segments_) {
    r = std::max({r, (s.p1 - c).norm(), (s.p2 - c).norm()});
  }
  *center = c;
  *radius = r;
}

ConflictBoundary ApproximateCircle(const Point2& center, double radius,
                                   int n_segments, const Arc& arc) {
  if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
  if (n_segments < 1) throw InvalidArgument("need at least one segment");
  const double span = arc.end_rad - arc.start_rad;
  if (!(span > 0.0)) throw InvalidArc("arc interval is empty");
  if (span > 2.0 * M_PI + 1e-12) throw InvalidArc("arc exceeds a full turn");

  std::vector<Segment> segments;
  std::vector<Vec2> normals;
  segments.reserve(n_segments);
  normals.reserve(n_segments);
  const double step = span / n_segments;
  for (int i = 0; i < n_segments; ++i) {
    const double a = arc.start_rad + i * step;
    const double b = a + step;
    const double mid = 0.5 * (a + b);
    segments.push_back({center + radius * Vec2(std::cos(a), std::sin(a)),
                        center + radius * Vec2(std::cos(b), std::sin(b))});
    normals.emplace_back(std::cos(mid), std::sin(mid));
  }
  // Chord directions computed from rounded endpoints can be off the exact
  // radial normal by a few ulps; snap each normal to the chord instead.
  for (int i = 0; i < n_segments; ++i) {
    const Vec2 d = (segments[i].p2 - segments[i].p1).normalized();
    Vec2 n(d.y(), -d.x());
    if (n.dot(normals[i]) < 0.0) n = -n;
    normals[i] = n;
  }
  return ConflictBoundary(std::move(segments), std::move(normals));
}

RigidTransform RigidTransform::Inverse() const {
  RigidTransform inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

RigidTransform RigidTransform::Compose(const RigidTransform& inner) const {
  RigidTransform out;
  out.rotation = rotation * inner.rotation;
  out.translation = rotation * inner.translation + translation;
  return out;
}

RigidTransform RigidTransform::Rotation(double angle_rad,
                                        const Vec2& translation) {
  RigidTransform t;
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  t.rotation << c, -s, s, c;
  t.translation = translation;
  return t;
}

RigidTransform Horizontalize(const Segment& segment, const Vec2& normal) {
  ValidateSegment(segment);
  const Vec2 n = normal.normalized();
  RigidTransform t;
  // Rows are the new axes: tangent (x) and normal (y). det = |n|^2 = 1.
  t.rotation << n.y(), -n.x(), n.x(), n.y();
  return t;
}

Segment TransformSegment(const Segment& s, const RigidTransform& t) {
  return {t.Apply(s.p1), t.Apply(s.p2)};
}

GaussianBelief TransformBelief(const GaussianBelief& belief,
                               const RigidTransform& t) {
  GaussianBelief out;
  out.time = belief.time;
  out.mean.head<2>() = t.Apply(belief.position());
  out.mean.tail<2>() = t.ApplyVector(belief.velocity());
  Mat4 big = Mat4::Zero();
  big.topLeftCorner<2, 2>() = t.rotation;
  big.bottomRightCorner<2, 2>() = t.rotation;
  out.covariance = big * belief.covariance * big.transpose();
  return out;
}

std::optional<double> IntersectSegments(const Point2& a0, const Point2& a1,
                                        const Point2& b0, const Point2& b1) {
  const Vec2 r = a1 - a0;
  const Vec2 s = b1 - b0;
  const double denom = Cross(r, s);
  if (denom == 0.0) return std::nullopt;
  const Vec2 q = b0 - a0;
  const double u = Cross(q, s) / denom;
  const double v = Cross(q, r) / denom;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return std::nullopt;
  return u;
}

std::optional<double> EnterDisk(const Point2& a0, const Point2& a1,
                                const Disk& disk) {
  const Vec2 f = a0 - disk.center;
  const double c = f.squaredNorm() - disk.radius * disk.radius;
  if (c <= 0.0) return 0.0;
  const Vec2 d = a1 - a0;
  const double a = d.squaredNorm();
  if (a == 0.0) return std::nullopt;
  const double b = f.dot(d);
  const double disc = b * b - a * c;
  if (disc < 0.0 || b >= 0.0) return std::nullopt;
  // Entry root; the c > 0 case keeps it positive. Written to avoid
  // cancellation.
  const double u = c / (-b + std::sqrt(disc));
  if (u > 1.0) return std::nullopt;
  return u;
}

}  // namespace fptc
