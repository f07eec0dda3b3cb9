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

// Seeded generators for reference fiber processes.
//
// A data set is built from two independent random streams: one draws the
// center points, the other the centered fiber shapes. Each shape is then
// translated onto its center. Sampling uses std::mt19937_64, whose output
// sequence is fixed by the standard, and hand-written uniform/normal
// transforms, so a seed produces the same data on every platform.

#ifndef FIBERK_SIMULATE_HPP_
#define FIBERK_SIMULATE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "fiberk/fiber.hpp"
#include "fiberk/kfunction.hpp"

namespace fiberk {

enum class Process {
  kUniformLines,
  kUniformSpirals,
  kUniformBrownian,
  kClusteredLines,
};

std::string_view to_string(Process process);
/// Accepts "lines", "spirals", "brownian", "clustered".
std::optional<Process> parse_process(std::string_view name);

enum class CountMode {
  kFixed,    // exactly n_fibers centers (binomial process)
  kPoisson,  // Poisson(n_fibers) many centers
};

struct SpiralShape {
  double radius_fraction;  // helix radius as a fraction of the fiber length
  double turns;
};

/// Default helix: three turns with radius length / (8 pi), so the winding
/// takes 3/4 of the arclength and the axis the rest.
SpiralShape default_spiral_shape();

struct ClusterParams {
  int n_clusters = 10;
  double cluster_std = 5.0;
  double direction_jitter_std = 0.1;
};

struct SimConfig {
  Process process = Process::kUniformLines;
  int n_fibers = 500;
  double fiber_length = 40.0;
  Window box{{0.0, 0.0, 0.0}, {100.0, 100.0, 100.0}};
  int points_per_fiber = 100;
  std::uint64_t seed = 0;
  /// Override the streams derived from `seed`.
  std::optional<std::uint64_t> center_seed;
  std::optional<std::uint64_t> shape_seed;
  CountMode count_mode = CountMode::kFixed;
  CenterKind center_kind = CenterKind::kMassCenter;
  SpiralShape spiral = default_spiral_shape();
  ClusterParams cluster;

  std::uint64_t center_stream_seed() const;
  std::uint64_t shape_stream_seed() const;
};

/// Throws InvalidParameter for an out-of-range field.
void validate(const SimConfig& config);

using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);
/// Standard normal via Box-Muller.
double standard_normal(Rng& rng);
Vec3 gaussian_vec3(Rng& rng);
/// Uniform direction on the unit sphere.
Vec3 random_unit_vector(Rng& rng);

/// Centers of the data set. Uniform processes draw i.i.d. uniform points in
/// the box. Clustered lines draw n_clusters uniform cluster centers and give
/// fiber i cluster i mod n_clusters with an isotropic Gaussian offset; offsets
/// that would leave the box are redrawn.
std::vector<Point3> sample_centers(const SimConfig& config, Rng& rng);

/// Straight line of the given length along a uniform random direction,
/// centered at the origin, with equally spaced vertices.
Fiber gen_line(double length, int points, Rng& rng);

/// Circular helix of the given arclength, uniformly rotated, centered.
Fiber gen_spiral(double length, int points, const SpiralShape& shape,
                 CenterKind kind, Rng& rng);

/// Random walk of points - 1 isotropic Gaussian steps rescaled to the given
/// arclength, centered.
Fiber gen_brownian(double length, int points, CenterKind kind, Rng& rng);

/// Line along base_direction + N(0, jitter_std^2 I), renormalized.
/// Throws InvalidParameter unless |base_direction| = 1 (to 1e-9).
Fiber gen_clustered_line(const Vec3& base_direction, double jitter_std,
                         double length, int points, Rng& rng);

/// Full data set; ids are "0", "1", ... in generation order.
std::vector<Fiber> make_dataset(const SimConfig& config);

}  // namespace fiberk

#endif  // FIBERK_SIMULATE_HPP_
