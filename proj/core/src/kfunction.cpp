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

#include "fiberk/kfunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "fiberk/error.hpp"
#include "parallel.hpp"

namespace fiberk {

Window::Window(const Point3& lower, const Point3& upper)
    : lower_(lower), upper_(upper) {
  if (!is_finite(lower) || !is_finite(upper)) {
    throw InvalidParameter("window corners must be finite");
  }
  if (!(lower.x < upper.x && lower.y < upper.y && lower.z < upper.z)) {
    throw InvalidParameter("window lower corner must be below upper corner");
  }
}

double Window::volume() const noexcept {
  return (upper_.x - lower_.x) * (upper_.y - lower_.y) * (upper_.z - lower_.z);
}

bool Window::contains(const Point3& p) const noexcept {
  return lower_.x <= p.x && p.x < upper_.x &&  //
         lower_.y <= p.y && p.y < upper_.y &&  //
         lower_.z <= p.z && p.z < upper_.z;
}

Window Window::translated(const Vec3& v) const {
  return Window(lower_ + v, upper_ + v);
}

Window Window::inset(double fraction) const {
  if (!(fraction >= 0.0) || !(fraction < 0.5)) {
    throw InvalidParameter("inset fraction must be in [0, 0.5)");
  }
  const Vec3 margin = (upper_ - lower_) * fraction;
  return Window(lower_ + margin, upper_ - margin);
}

Window bounding_box(std::span<const Point3> points) {
  if (points.empty()) throw InvalidParameter("bounding box of an empty set");
  Point3 lo = points.front();
  Point3 hi = points.front();
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return Window(lo, hi);
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start) ||
      !std::isfinite(stop) || stop < start) {
    throw InvalidParameter("grid needs finite start <= stop and step > 0");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    grid.push_back(start + step * static_cast<double>(k));
  }
  return grid;
}

KConfig default_kconfig() {
  KConfig config;
  config.t_grid = linear_grid(5.0, 50.0, 5.0);
  config.s_grid = linear_grid(10.0, 100.0, 10.0);
  return config;
}

void validate_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) {
    throw InvalidParameter(std::string(name) + " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw InvalidParameter(std::string(name) +
                             " grid values must be positive and finite");
    }
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw InvalidParameter(std::string(name) +
                             " grid must be strictly ascending");
    }
  }
}

IntensityEstimate estimate_intensity(std::span<const Fiber> fibers,
                                     const Window& window, CenterKind kind) {
  IntensityEstimate est;
  for (const auto& f : fibers) {
    if (window.contains(center_of(f, kind))) ++est.n;
  }
  est.intensity = static_cast<double>(est.n) / window.volume();
  return est;
}

double csr_reference(double t) {
  return 4.0 / 3.0 * std::numbers::pi * t * t * t;
}

PreparedFibers prepare_fibers(std::span<const Fiber> fibers,
                              const KConfig& config) {
  const double spacing = config.effective_spacing();
  PreparedFibers out;
  out.centers.reserve(fibers.size());
  out.currents.reserve(fibers.size());
  for (const auto& f : fibers) {
    auto centered = center(f, config.center_kind);
    out.centers.push_back(centered.original_center);
    out.currents.push_back(discretize(centered.fiber, spacing));
  }
  out.squared_norms.assign(fibers.size(), 0.0);
  internal::parallel_for(fibers.size(), config.threads, [&](std::size_t i) {
    out.squared_norms[i] = squared_norm(out.currents[i], config.kernel);
  });
  return out;
}

double shape_distance(const PreparedFibers& prepared, std::size_t i,
                      std::size_t j, const KConfig& config) {
  const double ab =
      inner_product(prepared.currents[i], prepared.currents[j], config.kernel);
  const double aa = prepared.squared_norms[i];
  const double bb = prepared.squared_norms[j];
  return config.orientation_invariant ? min_distance_from_gram(aa, bb, ab)
                                      : distance_from_gram(aa, bb, ab);
}

namespace {

using Cell = std::array<std::int64_t, 3>;

Cell cell_of(const Point3& p, double size) {
  return {static_cast<std::int64_t>(std::floor(p.x / size)),
          static_cast<std::int64_t>(std::floor(p.y / size)),
          static_cast<std::int64_t>(std::floor(p.z / size))};
}

// Ordered (first, second) index pairs with first in the window and
// |c_first - c_second| <= radius, sorted.
std::vector<std::pair<std::size_t, std::size_t>> grid_pairs(
    std::span<const Point3> centers, const std::vector<bool>& in_window,
    double radius) {
  std::map<Cell, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    buckets[cell_of(centers[i], radius)].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!in_window[i]) continue;
    const Cell c = cell_of(centers[i], radius);
    candidates.clear();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = buckets.find({c[0] + dx, c[1] + dy, c[2] + dz});
          if (it == buckets.end()) continue;
          candidates.insert(candidates.end(), it->second.begin(),
                            it->second.end());
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (const std::size_t j : candidates) {
      if (j != i && distance(centers[i], centers[j]) <= radius) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(
    std::span<const Point3> centers, const std::vector<bool>& in_window,
    double radius) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!in_window[i]) continue;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (j != i && distance(centers[i], centers[j]) <= radius) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

void validate_config(const KConfig& config) {
  validate_grid(config.t_grid, "t");
  validate_grid(config.s_grid, "s");
  const double spacing = config.effective_spacing();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidParameter("discretization spacing must be positive and finite");
  }
}

}  // namespace

std::vector<PairRecord> pair_distances(std::span<const Fiber> fibers,
                                       const KConfig& config,
                                       const Window& window) {
  validate_config(config);
  const PreparedFibers prepared = prepare_fibers(fibers, config);

  std::vector<bool> in_window(fibers.size());
  std::int64_t n = 0;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    in_window[i] = window.contains(prepared.centers[i]);
    n += in_window[i] ? 1 : 0;
  }
  if (n == 0) {
    throw EmptyWindowError("no fiber center lies inside the window");
  }

  const double radius = config.t_grid.back();
  const auto ordered = config.enumeration == PairEnumeration::kGrid
                           ? grid_pairs(prepared.centers, in_window, radius)
                           : all_pairs(prepared.centers, in_window, radius);

  std::vector<std::pair<std::size_t, std::size_t>> unordered;
  unordered.reserve(ordered.size());
  for (const auto& [i, j] : ordered) {
    unordered.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(unordered.begin(), unordered.end());
  unordered.erase(std::unique(unordered.begin(), unordered.end()),
                  unordered.end());

  std::vector<double> shape(unordered.size());
  internal::parallel_for(unordered.size(), config.threads, [&](std::size_t k) {
    shape[k] = shape_distance(prepared, unordered[k].first, unordered[k].second,
                              config);
  });

  std::vector<PairRecord> records;
  records.reserve(ordered.size());
  for (const auto& [i, j] : ordered) {
    const auto key = std::make_pair(std::min(i, j), std::max(i, j));
    const auto it = std::lower_bound(unordered.begin(), unordered.end(), key);
    records.push_back({i, j, fibers[i].id(), fibers[j].id(),
                       distance(prepared.centers[i], prepared.centers[j]),
                       shape[static_cast<std::size_t>(it - unordered.begin())]});
  }
  return records;
}

KResult k_from_pairs(std::span<const PairRecord> pairs, const KConfig& config,
                     const Window& window, std::int64_t n_in_window) {
  validate_config(config);
  if (n_in_window <= 0) {
    throw EmptyWindowError("no fiber center lies inside the window");
  }
  const auto& tg = config.t_grid;
  const auto& sg = config.s_grid;
  const std::size_t nt = tg.size();
  const std::size_t ns = sg.size();

  // Histogram on the first grid cell each pair qualifies for, then a 2D
  // cumulative sum: indicators use closed thresholds (<= t, <= s).
  std::vector<std::int64_t> counts(nt * ns, 0);
  for (const auto& rec : pairs) {
    const auto ti = static_cast<std::size_t>(
        std::lower_bound(tg.begin(), tg.end(), rec.center_distance) - tg.begin());
    const auto si = static_cast<std::size_t>(
        std::lower_bound(sg.begin(), sg.end(), rec.shape_distance) - sg.begin());
    if (ti < nt && si < ns) ++counts[ti * ns + si];
  }
  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (std::size_t si = 0; si < ns; ++si) {
      std::int64_t v = counts[ti * ns + si];
      if (ti > 0) v += counts[(ti - 1) * ns + si];
      if (si > 0) v += counts[ti * ns + si - 1];
      if (ti > 0 && si > 0) v -= counts[(ti - 1) * ns + si - 1];
      counts[ti * ns + si] = v;
    }
  }

  KResult result{.t_grid = tg,
                 .s_grid = sg,
                 .k = std::vector<double>(nt * ns),
                 .counts = std::move(counts),
                 .n_in_window = n_in_window,
                 .intensity_hat = static_cast<double>(n_in_window) / window.volume(),
                 .window = window};
  const double n = static_cast<double>(n_in_window);
  for (std::size_t c = 0; c < result.k.size(); ++c) {
    result.k[c] = static_cast<double>(result.counts[c]) / n;
  }
  return result;
}

KResult k_function(std::span<const Fiber> fibers, const KConfig& config,
                   const Window& window) {
  const auto pairs = pair_distances(fibers, config, window);
  std::int64_t n = 0;
  for (const auto& f : fibers) {
    if (window.contains(center_of(f, config.center_kind))) ++n;
  }
  return k_from_pairs(pairs, config, window, n);
}

double intensity_normalized(const KResult& result, std::size_t ti,
                            std::size_t si) {
  return result.at(ti, si) / result.intensity_hat;
}

double saturation_bound(std::span<const Fiber> fibers, const KConfig& config) {
  double max_sq = 0.0;
  const double spacing = config.effective_spacing();
  for (const auto& f : fibers) {
    const auto current = discretize(center(f, config.center_kind).fiber, spacing);
    max_sq = std::max(max_sq, squared_norm(current, config.kernel));
  }
  // Relative slack absorbs rounding in distances that attain the bound.
  return std::sqrt(4.0 * max_sq) * (1.0 + 1e-9);
}

}  // namespace fiberk
