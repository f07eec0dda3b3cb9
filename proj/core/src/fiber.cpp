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

#include "fiberk/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fiberk/error.hpp"

namespace fiberk {
namespace {

// Relative slack used when deciding how many equal pieces a length splits
// into, so that 40 / 10 gives 4 pieces rather than 5 after rounding.
constexpr double kCountSlack = 1e-12;

std::size_t piece_count(double length, double piece) {
  const double ratio = length / piece;
  const auto n = static_cast<std::size_t>(std::ceil(ratio * (1.0 - kCountSlack)));
  return std::max<std::size_t>(n, 1);
}

}  // namespace

Fiber::Fiber(std::string id, std::vector<Point3> points)
    : id_(std::move(id)), points_(std::move(points)) {
  if (points_.size() < 2) {
    throw ValidationError("fiber '" + id_ + "' has " +
                          std::to_string(points_.size()) +
                          " point(s); at least 2 are required");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!is_finite(points_[i])) {
      throw ValidationError("fiber '" + id_ + "' point " + std::to_string(i) +
                            " has a non-finite coordinate");
    }
    if (i > 0 && points_[i] == points_[i - 1]) {
      throw ValidationError("fiber '" + id_ + "' points " +
                            std::to_string(i - 1) + " and " +
                            std::to_string(i) + " coincide");
    }
  }
}

double arclength(const Fiber& fiber) {
  const auto pts = fiber.points();
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

std::vector<double> cumulative_arclength(const Fiber& fiber) {
  const auto pts = fiber.points();
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  }
  return cum;
}

namespace {

Point3 point_at(std::span<const Point3> pts, const std::vector<double>& cum,
                double s) {
  if (s <= 0.0) return pts.front();
  if (s >= cum.back()) return pts.back();
  // First vertex with cumulative arclength >= s; the point lies on the
  // segment ending there.
  const auto it = std::lower_bound(cum.begin(), cum.end(), s);
  const auto hi = static_cast<std::size_t>(it - cum.begin());
  const std::size_t lo = hi - 1;
  const double u = (s - cum[lo]) / (cum[hi] - cum[lo]);
  return lerp(pts[lo], pts[hi], u);
}

}  // namespace

Point3 point_at(const Fiber& fiber, double s) {
  return point_at(fiber.points(), cumulative_arclength(fiber), s);
}

Fiber resample(const Fiber& fiber, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidParameter("resample spacing must be positive and finite");
  }
  const auto pts = fiber.points();
  const auto cum = cumulative_arclength(fiber);
  const double length = cum.back();
  const std::size_t n = piece_count(length, spacing);

  std::vector<Point3> out;
  out.reserve(n + 1);
  out.push_back(pts.front());
  for (std::size_t k = 1; k < n; ++k) {
    out.push_back(point_at(pts, cum, length * static_cast<double>(k) /
                                         static_cast<double>(n)));
  }
  out.push_back(pts.back());
  return Fiber(fiber.id(), std::move(out));
}

Point3 center_of(const Fiber& fiber, CenterKind kind) {
  switch (kind) {
    case CenterKind::kMassCenter: {
      // Exact centroid of a polyline under the length measure: each segment
      // contributes its midpoint weighted by its length.
      const auto pts = fiber.points();
      Vec3 acc;
      double total = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        const double len = distance(pts[i - 1], pts[i]);
        acc += (pts[i - 1] + pts[i]) * (0.5 * len);
        total += len;
      }
      return acc * (1.0 / total);
    }
    case CenterKind::kArclengthMidpoint: {
      const auto cum = cumulative_arclength(fiber);
      return point_at(fiber.points(), cum, 0.5 * cum.back());
    }
  }
  return {};
}

CenteredFiber center(const Fiber& fiber, CenterKind kind) {
  const Point3 c = center_of(fiber, kind);
  return CenteredFiber{c, translate(fiber, -c)};
}

Fiber translate(const Fiber& fiber, const Vec3& v) {
  std::vector<Point3> out(fiber.points().begin(), fiber.points().end());
  for (auto& p : out) p += v;
  return Fiber(fiber.id(), std::move(out));
}

Fiber reverse(const Fiber& fiber) {
  std::vector<Point3> out(fiber.points().rbegin(), fiber.points().rend());
  return Fiber(fiber.id(), std::move(out));
}

std::vector<Fiber> segment(const Fiber& fiber, double max_length) {
  if (!(max_length > 0.0) || !std::isfinite(max_length)) {
    throw InvalidParameter("segment max_length must be positive and finite");
  }
  const auto pts = fiber.points();
  const auto cum = cumulative_arclength(fiber);
  const double length = cum.back();
  const std::size_t n = piece_count(length, max_length);
  if (n == 1) return {fiber};

  // A cut that lands within this distance of a vertex snaps to it, which
  // keeps every piece free of zero-length segments.
  const double snap = 1e-12 * length;

  std::vector<Fiber> pieces;
  pieces.reserve(n);
  std::vector<Point3> current{pts.front()};
  std::size_t next_vertex = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const double cut = k == n ? length : max_length * static_cast<double>(k);
    while (next_vertex < pts.size() && cum[next_vertex] < cut - snap) {
      current.push_back(pts[next_vertex]);
      ++next_vertex;
    }
    Point3 cut_point;
    if (next_vertex < pts.size() && std::abs(cum[next_vertex] - cut) <= snap) {
      cut_point = pts[next_vertex];
      ++next_vertex;
    } else {
      cut_point = point_at(pts, cum, cut);
    }
    if (!(cut_point == current.back())) current.push_back(cut_point);
    pieces.emplace_back(fiber.id() + "." + std::to_string(k - 1),
                        std::move(current));
    current = {cut_point};
  }
  return pieces;
}

double diameter(const Fiber& fiber) {
  const auto pts = fiber.points();
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, squared_distance(pts[i], pts[j]));
    }
  }
  return std::sqrt(best);
}

std::string_view to_string(CenterKind kind) {
  switch (kind) {
    case CenterKind::kMassCenter:
      return "mass";
    case CenterKind::kArclengthMidpoint:
      return "midpoint";
  }
  return "unknown";
}

}  // namespace fiberk
