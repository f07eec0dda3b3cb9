// Copyright 2026 The fiberk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Polyline fibers: the raw shape datum and the geometric operations the
// currents and K-function code build on.

#ifndef FIBERK_FIBER_HPP_
#define FIBERK_FIBER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiberk/vec3.hpp"

namespace fiberk {

/// An ordered 3D polyline with an opaque identifier.
///
/// Construction validates the invariants: at least two points, every
/// coordinate finite, and no two consecutive points equal (every segment
/// has positive length). Violations throw ValidationError. A Fiber is
/// immutable after construction.
class Fiber {
 public:
  Fiber(std::string id, std::vector<Point3> points);

  const std::string& id() const noexcept { return id_; }
  std::span<const Point3> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t segment_count() const noexcept { return points_.size() - 1; }
  const Point3& front() const noexcept { return points_.front(); }
  const Point3& back() const noexcept { return points_.back(); }

  friend bool operator==(const Fiber&, const Fiber&) = default;

 private:
  std::string id_;
  std::vector<Point3> points_;
};

enum class CenterKind {
  kMassCenter,         // arclength-weighted centroid
  kArclengthMidpoint,  // point at half the total arclength
};

/// A fiber translated so that its center is the origin, together with the
/// center it had before translation.
struct CenteredFiber {
  Point3 original_center;
  Fiber fiber;
};

double arclength(const Fiber& fiber);

/// Cumulative arclength at every vertex; front() == 0, back() == arclength.
std::vector<double> cumulative_arclength(const Fiber& fiber);

/// Point at arclength position `s` (clamped to [0, arclength]).
Point3 point_at(const Fiber& fiber, double s);

/// Resamples at ceil(L / spacing) + 1 points spaced equally in arclength.
/// The first and last points are the original endpoints.
/// Throws InvalidParameter if spacing <= 0.
Fiber resample(const Fiber& fiber, double spacing);

Point3 center_of(const Fiber& fiber, CenterKind kind);
CenteredFiber center(const Fiber& fiber, CenterKind kind);

Fiber translate(const Fiber& fiber, const Vec3& v);
Fiber reverse(const Fiber& fiber);

/// Splits the fiber into ceil(L / max_length) pieces. All pieces except the
/// last have arclength max_length; cut points are interpolated on the
/// segments they fall in. Piece k gets id "<parent>.<k>". A fiber that is
/// not longer than max_length is returned unchanged (same id).
/// Throws InvalidParameter if max_length <= 0.
std::vector<Fiber> segment(const Fiber& fiber, double max_length);

/// Largest distance between any two vertices.
double diameter(const Fiber& fiber);

std::string_view to_string(CenterKind kind);

}  // namespace fiberk

#endif  // FIBERK_FIBER_HPP_
