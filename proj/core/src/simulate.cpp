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

#include "fiberk/simulate.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fiberk/error.hpp"

namespace fiberk {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kCenterStream = 0x63656e7465727321ULL;
constexpr std::uint64_t kShapeStream = 0x7368617065732121ULL;
constexpr int kMaxRedraws = 100000;

using Mat3 = std::array<Vec3, 3>;  // rows

Vec3 apply(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

// Uniform rotation on SO(3) from a uniformly distributed unit quaternion.
Mat3 random_rotation(Rng& rng) {
  double w, x, y, z, n2;
  do {
    w = standard_normal(rng);
    x = standard_normal(rng);
    y = standard_normal(rng);
    z = standard_normal(rng);
    n2 = w * w + x * x + y * y + z * z;
  } while (n2 < 1e-24);
  const double s = 1.0 / std::sqrt(n2);
  w *= s;
  x *= s;
  y *= s;
  z *= s;
  return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          Vec3{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          Vec3{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

double polyline_length(const std::vector<Point3>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

void rescale_to_length(std::vector<Point3>& pts, double length) {
  const double factor = length / polyline_length(pts);
  for (auto& p : pts) p *= factor;
}

Fiber centered_shape(std::vector<Point3> pts, CenterKind kind) {
  return center(Fiber("", std::move(pts)), kind).fiber;
}

Point3 uniform_in(const Window& box, Rng& rng) {
  const Point3& lo = box.lower();
  const Point3& hi = box.upper();
  const auto axis = [&](double a, double b) {
    const double v = a + (b - a) * uniform01(rng);
    return v < b ? v : std::nextafter(b, a);
  };
  const double x = axis(lo.x, hi.x);
  const double y = axis(lo.y, hi.y);
  const double z = axis(lo.z, hi.z);
  return {x, y, z};
}

int poisson(double mean, Rng& rng) {
  // Count of unit-rate exponential arrivals before `mean`.
  int n = 0;
  double t = -std::log(1.0 - uniform01(rng));
  while (t < mean) {
    ++n;
    t += -std::log(1.0 - uniform01(rng));
  }
  return n;
}

void check_shape_args(double length, int points) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidParameter("fiber length must be positive and finite");
  }
  if (points < 2) throw InvalidParameter("a fiber needs at least 2 points");
}

}  // namespace

std::string_view to_string(Process process) {
  switch (process) {
    case Process::kUniformLines:
      return "lines";
    case Process::kUniformSpirals:
      return "spirals";
    case Process::kUniformBrownian:
      return "brownian";
    case Process::kClusteredLines:
      return "clustered";
  }
  return "unknown";
}

std::optional<Process> parse_process(std::string_view name) {
  for (const auto p : {Process::kUniformLines, Process::kUniformSpirals,
                       Process::kUniformBrownian, Process::kClusteredLines}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

SpiralShape default_spiral_shape() {
  return {1.0 / (8.0 * std::numbers::pi), 3.0};
}

std::uint64_t SimConfig::center_stream_seed() const {
  return center_seed.value_or(splitmix64(seed ^ kCenterStream));
}

std::uint64_t SimConfig::shape_stream_seed() const {
  return shape_seed.value_or(splitmix64(seed ^ kShapeStream));
}

void validate(const SimConfig& config) {
  if (config.n_fibers < 1) throw InvalidParameter("n_fibers must be >= 1");
  check_shape_args(config.fiber_length, config.points_per_fiber);
  if (config.process == Process::kUniformSpirals) {
    const auto& s = config.spiral;
    if (!(s.radius_fraction >= 0.0) || !(s.turns > 0.0) ||
        !(2.0 * std::numbers::pi * s.turns * s.radius_fraction < 1.0)) {
      throw InvalidParameter(
          "spiral needs radius_fraction >= 0, turns > 0 and a winding shorter "
          "than the fiber (2 pi turns radius_fraction < 1)");
    }
  }
  if (config.process == Process::kClusteredLines) {
    const auto& c = config.cluster;
    if (c.n_clusters < 1) throw InvalidParameter("n_clusters must be >= 1");
    if (!(c.cluster_std >= 0.0) || !std::isfinite(c.cluster_std)) {
      throw InvalidParameter("cluster_std must be >= 0");
    }
    if (!(c.direction_jitter_std >= 0.0) ||
        !std::isfinite(c.direction_jitter_std)) {
      throw InvalidParameter("direction_jitter_std must be >= 0");
    }
  }
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 gaussian_vec3(Rng& rng) {
  const double x = standard_normal(rng);
  const double y = standard_normal(rng);
  const double z = standard_normal(rng);
  return {x, y, z};
}

Vec3 random_unit_vector(Rng& rng) {
  for (;;) {
    const Vec3 g = gaussian_vec3(rng);
    const double n = norm(g);
    if (n > 1e-12) return g * (1.0 / n);
  }
}

std::vector<Point3> sample_centers(const SimConfig& config, Rng& rng) {
  validate(config);
  const int n = config.count_mode == CountMode::kPoisson
                    ? poisson(static_cast<double>(config.n_fibers), rng)
                    : config.n_fibers;
  std::vector<Point3> centers;
  centers.reserve(static_cast<std::size_t>(n));
  if (config.process != Process::kClusteredLines) {
    for (int i = 0; i < n; ++i) centers.push_back(uniform_in(config.box, rng));
    return centers;
  }

  const auto& cp = config.cluster;
  std::vector<Point3> parents;
  for (int c = 0; c < cp.n_clusters; ++c) parents.push_back(uniform_in(config.box, rng));
  for (int i = 0; i < n; ++i) {
    const Point3& parent = parents[static_cast<std::size_t>(i % cp.n_clusters)];
    int tries = 0;
    for (;;) {
      const Point3 p = parent + gaussian_vec3(rng) * cp.cluster_std;
      if (config.box.contains(p)) {
        centers.push_back(p);
        break;
      }
      if (++tries == kMaxRedraws) {
        throw InvalidParameter("cluster offsets keep leaving the box");
      }
    }
  }
  return centers;
}

Fiber gen_line(double length, int points, Rng& rng) {
  check_shape_args(length, points);
  const Vec3 half = random_unit_vector(rng) * (0.5 * length);
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    pts.push_back(lerp(-half, half, static_cast<double>(k) / (points - 1)));
  }
  pts.back() = half;
  return Fiber("", std::move(pts));
}

Fiber gen_spiral(double length, int points, const SpiralShape& shape,
                 CenterKind kind, Rng& rng) {
  check_shape_args(length, points);
  const double angle = 2.0 * std::numbers::pi * shape.turns;
  const double radius = shape.radius_fraction * length;
  const double winding = radius * angle;
  if (!(shape.turns > 0.0) || !(radius >= 0.0) || !(winding < length)) {
    throw InvalidParameter("spiral winding must be shorter than the fiber");
  }
  const double rise = std::sqrt(length * length - winding * winding) / angle;

  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double th = angle * static_cast<double>(k) / (points - 1);
    pts.push_back({radius * std::cos(th), radius * std::sin(th), rise * th});
  }
  // Chords are shorter than the arcs they replace.
  rescale_to_length(pts, length);
  const Mat3 rot = random_rotation(rng);
  for (auto& p : pts) p = apply(rot, p);
  return centered_shape(std::move(pts), kind);
}

Fiber gen_brownian(double length, int points, CenterKind kind, Rng& rng) {
  check_shape_args(length, points);
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(points));
  pts.push_back({});
  while (static_cast<int>(pts.size()) < points) {
    const Vec3 step = gaussian_vec3(rng);
    if (squared_norm(step) == 0.0) continue;
    pts.push_back(pts.back() + step);
  }
  rescale_to_length(pts, length);
  return centered_shape(std::move(pts), kind);
}

Fiber gen_clustered_line(const Vec3& base_direction, double jitter_std,
                         double length, int points, Rng& rng) {
  check_shape_args(length, points);
  if (std::abs(norm(base_direction) - 1.0) > 1e-9) {
    throw InvalidParameter("base direction must be a unit vector");
  }
  if (!(jitter_std >= 0.0)) throw InvalidParameter("jitter_std must be >= 0");
  Vec3 dir = base_direction;
  for (;;) {
    const Vec3 noise = gaussian_vec3(rng);
    if (jitter_std == 0.0) break;
    const Vec3 d = base_direction + noise * jitter_std;
    const double n = norm(d);
    if (n > 1e-12) {
      dir = d * (1.0 / n);
      break;
    }
  }
  const Vec3 half = dir * (0.5 * length);
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    pts.push_back(lerp(-half, half, static_cast<double>(k) / (points - 1)));
  }
  pts.back() = half;
  return Fiber("", std::move(pts));
}

std::vector<Fiber> make_dataset(const SimConfig& config) {
  validate(config);
  Rng center_rng(config.center_stream_seed());
  Rng shape_rng(config.shape_stream_seed());
  const auto centers = sample_centers(config, center_rng);

  std::vector<Vec3> cluster_dirs;
  if (config.process == Process::kClusteredLines) {
    for (int c = 0; c < config.cluster.n_clusters; ++c) {
      cluster_dirs.push_back(random_unit_vector(shape_rng));
    }
  }

  const double len = config.fiber_length;
  const int pts = config.points_per_fiber;
  std::vector<Fiber> out;
  out.reserve(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    Fiber shape = [&] {
      switch (config.process) {
        case Process::kUniformLines:
          return gen_line(len, pts, shape_rng);
        case Process::kUniformSpirals:
          return gen_spiral(len, pts, config.spiral, config.center_kind,
                            shape_rng);
        case Process::kUniformBrownian:
          return gen_brownian(len, pts, config.center_kind, shape_rng);
        case Process::kClusteredLines:
          return gen_clustered_line(
              cluster_dirs[i % cluster_dirs.size()],
              config.cluster.direction_jitter_std, len, pts, shape_rng);
      }
      throw InvalidParameter("unknown process");
    }();
    std::vector<Point3> moved(shape.points().begin(), shape.points().end());
    for (auto& p : moved) p += centers[i];
    out.emplace_back(std::to_string(i), std::move(moved));
  }
  return out;
}

}  // namespace fiberk
