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

// Two-parameter K-function for fiber patterns.
//
// For every fiber g whose center lies in the window W and every other fiber
// g' in the data set (inside W or not) the estimator counts the indicator
//
//   1[ |c(g) - c(g')| <= t  and  D(g_c, g'_c) <= s ]
//
// where c is the center function, g_c the centered fiber, and D the currents
// distance (orientation-minimal by default). The count is normalized by
// |W| * nu_hat with nu_hat = N / |W|, i.e. divided by N.

#ifndef FIBERK_KFUNCTION_HPP_
#define FIBERK_KFUNCTION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiberk/currents.hpp"
#include "fiberk/fiber.hpp"

namespace fiberk {

/// Axis-aligned box with half-open membership [lower, upper).
class Window {
 public:
  Window(const Point3& lower, const Point3& upper);

  const Point3& lower() const noexcept { return lower_; }
  const Point3& upper() const noexcept { return upper_; }
  double volume() const noexcept;
  bool contains(const Point3& p) const noexcept;

  Window translated(const Vec3& v) const;

  /// Shrinks the box by `fraction` of its extent on every side.
  Window inset(double fraction) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Point3 lower_;
  Point3 upper_;
};

/// Bounding box of a point set. Throws InvalidParameter if the box is
/// degenerate along any axis.
Window bounding_box(std::span<const Point3> points);

enum class PairEnumeration {
  kGrid,      // bucket centers on a uniform grid with cell size max(t_grid)
  kAllPairs,  // reference enumeration of every ordered pair
};

struct KConfig {
  CenterKind center_kind = CenterKind::kMassCenter;
  KernelParams kernel = default_kernel();
  std::vector<double> t_grid;
  std::vector<double> s_grid;
  bool orientation_invariant = true;
  std::optional<double> spacing;  // default_spacing(kernel) when unset
  PairEnumeration enumeration = PairEnumeration::kGrid;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()

  double effective_spacing() const {
    return spacing.value_or(default_spacing(kernel));
  }
};

/// start, start + step, ... up to stop, which is included when it lies on
/// the grid (within 1e-9 steps). Throws InvalidParameter for step <= 0 or
/// stop < start.
std::vector<double> linear_grid(double start, double stop, double step);

/// t = 5, 10, ..., 50 and s = 10, 20, ..., 100.
KConfig default_kconfig();

struct KResult {
  std::vector<double> t_grid;
  std::vector<double> s_grid;
  std::vector<double> k;              // row-major, |t_grid| x |s_grid|
  std::vector<std::int64_t> counts;   // qualifying ordered pairs, same layout
  std::int64_t n_in_window = 0;
  double intensity_hat = 0.0;
  Window window{{0, 0, 0}, {1, 1, 1}};

  double at(std::size_t ti, std::size_t si) const {
    return k[ti * s_grid.size() + si];
  }
  std::int64_t count_at(std::size_t ti, std::size_t si) const {
    return counts[ti * s_grid.size() + si];
  }
};

struct IntensityEstimate {
  std::int64_t n = 0;
  double intensity = 0.0;
};

IntensityEstimate estimate_intensity(std::span<const Fiber> fibers,
                                     const Window& window, CenterKind kind);

/// Volume of the radius-t ball in three dimensions, the K-function of
/// complete spatial randomness.
double csr_reference(double t);

/// Per-fiber quantities shared by every pair: the center, the discretized
/// centered fiber, and its squared norm.
struct PreparedFibers {
  std::vector<Point3> centers;
  std::vector<DiscreteCurrent> currents;
  std::vector<double> squared_norms;
};

PreparedFibers prepare_fibers(std::span<const Fiber> fibers,
                              const KConfig& config);

/// Currents distance between centered fibers i and j; orientation-minimal
/// when config.orientation_invariant is set. Symmetric in (i, j) bit for bit.
double shape_distance(const PreparedFibers& prepared, std::size_t i,
                      std::size_t j, const KConfig& config);

/// One ordered pair (first, second) that the estimator considers: the first
/// fiber's center lies in the window and the two centers are within
/// max(t_grid) of each other.
struct PairRecord {
  std::size_t first = 0;   // index into the input
  std::size_t second = 0;
  std::string first_id;
  std::string second_id;
  double center_distance = 0.0;
  double shape_distance = 0.0;
};

/// Materializes every ordered pair the K-function counts. Shape distances
/// are computed once per unordered pair (in parallel when config.threads
/// allows) and mirrored. Records are sorted by (first, second).
/// Throws EmptyWindowError if no center lies in the window and
/// InvalidParameter for an invalid grid.
std::vector<PairRecord> pair_distances(std::span<const Fiber> fibers,
                                       const KConfig& config,
                                       const Window& window);

/// Thresholds pair records on the grid and normalizes by n_in_window.
KResult k_from_pairs(std::span<const PairRecord> pairs, const KConfig& config,
                     const Window& window, std::int64_t n_in_window);

KResult k_function(std::span<const Fiber> fibers, const KConfig& config,
                   const Window& window);

/// K-hat divided by nu_hat, the normalization under which complete spatial
/// randomness gives csr_reference(t) once s saturates.
double intensity_normalized(const KResult& result, std::size_t ti,
                            std::size_t si);

/// Upper bound on every shape distance in the data set:
/// sqrt(2 (|a|^2 + |b|^2)) maximized over fibers, computed on the centered
/// currents with the config's kernel and spacing.
double saturation_bound(std::span<const Fiber> fibers, const KConfig& config);

/// Throws InvalidParameter unless the grid is nonempty, strictly ascending,
/// finite and positive.
void validate_grid(const std::vector<double>& grid, const char* name);

}  // namespace fiberk

#endif  // FIBERK_KFUNCTION_HPP_
