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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fiberk/error.hpp"
#include "fiberk/kfunction.hpp"
#include "fiberk/simulate.hpp"
#include "test_util.hpp"

namespace fiberk {
namespace {

const Window kUnit{{0, 0, 0}, {1, 1, 1}};
const Window kBox{{0, 0, 0}, {100, 100, 100}};

Fiber short_line(const std::string& id, const Point3& c) {
  return Fiber(id, {c - Vec3{0.1, 0, 0}, c + Vec3{0.1, 0, 0}});
}

std::vector<Fiber> small_dataset(Process process, std::uint64_t seed, int n = 80) {
  SimConfig sim;
  sim.process = process;
  sim.n_fibers = n;
  sim.points_per_fiber = 20;
  sim.seed = seed;
  return make_dataset(sim);
}

KConfig small_config() {
  KConfig config = default_kconfig();
  config.t_grid = linear_grid(5, 40, 5);
  config.s_grid = linear_grid(5, 80, 5);
  return config;
}

TEST(WindowTest, HalfOpenMembership) {
  EXPECT_DOUBLE_EQ(kUnit.volume(), 1.0);
  EXPECT_TRUE(kUnit.contains({0, 0, 0}));
  EXPECT_TRUE(kUnit.contains({0.5, 0.999, 0.2}));
  EXPECT_FALSE(kUnit.contains({1, 0.5, 0.5}));
  EXPECT_FALSE(kUnit.contains({0.5, 0.5, 1}));
  EXPECT_FALSE(kUnit.contains({-1e-300, 0.5, 0.5}));
  EXPECT_THROW(Window({0, 0, 0}, {1, 0, 1}), InvalidParameter);
  EXPECT_THROW(Window({0, 0, 0}, {1, NAN, 1}), InvalidParameter);
}

TEST(WindowTest, InsetAndBoundingBox) {
  const Window w = kBox.inset(0.13);
  EXPECT_NEAR(w.lower().x, 13.0, 1e-12);
  EXPECT_NEAR(w.upper().z, 87.0, 1e-12);
  EXPECT_THROW(kBox.inset(0.5), InvalidParameter);
  const std::vector<Point3> pts{{1, 2, 3}, {4, -1, 9}, {0, 5, 6}};
  const Window bb = bounding_box(pts);
  EXPECT_EQ(bb.lower(), (Point3{0, -1, 3}));
  EXPECT_EQ(bb.upper(), (Point3{4, 5, 9}));
}

TEST(LinearGridTest, InclusiveWhenAligned) {
  EXPECT_EQ(linear_grid(5, 50, 5).size(), 10u);
  EXPECT_EQ(linear_grid(5, 50, 5).back(), 50.0);
  EXPECT_EQ(linear_grid(10, 10, 10), std::vector<double>{10.0});
  EXPECT_EQ(linear_grid(0.1, 0.3, 0.1).size(), 3u);
  EXPECT_EQ(linear_grid(1, 2.5, 1).size(), 2u);
  EXPECT_THROW(linear_grid(1, 2, 0), InvalidParameter);
  EXPECT_THROW(linear_grid(3, 2, 1), InvalidParameter);
}

TEST(EstimateIntensityTest, CountsAndHalfOpenFace) {
  const std::vector<Fiber> two{short_line("a", {0.2, 0.5, 0.5}),
                               short_line("b", {0.7, 0.5, 0.5})};
  const auto est = estimate_intensity(two, kUnit, CenterKind::kMassCenter);
  EXPECT_EQ(est.n, 2);
  EXPECT_DOUBLE_EQ(est.intensity, 2.0);

  const std::vector<Fiber> on_face{Fiber("f", {{0.5, 0.5, 0.9}, {0.5, 0.5, 1.1}})};
  EXPECT_EQ(estimate_intensity(on_face, kUnit, CenterKind::kMassCenter).n, 0);
}

TEST(EstimateIntensityTest, BinomialExpectation) {
  SimConfig sim;
  sim.n_fibers = 500;
  sim.points_per_fiber = 2;
  sim.seed = 41;
  const auto fibers = make_dataset(sim);
  const Window w({13, 13, 13}, {87, 87, 87});
  const double p = std::pow(0.74, 3);
  EXPECT_NEAR(p, 0.405224, 1e-12);
  const double mean = 500 * p;
  const double sd = std::sqrt(500 * p * (1 - p));
  const auto est = estimate_intensity(fibers, w, CenterKind::kMassCenter);
  EXPECT_LE(std::abs(static_cast<double>(est.n) - mean), 3 * sd);
  EXPECT_DOUBLE_EQ(est.intensity, static_cast<double>(est.n) / std::pow(74.0, 3));
}

TEST(CsrReferenceTest, BallVolume) {
  EXPECT_NEAR(csr_reference(1.0), 4.18879020, 1e-8);
  EXPECT_NEAR(csr_reference(10.0), 4188.79020, 1e-5);
  EXPECT_EQ(csr_reference(20.0) / csr_reference(10.0), 8.0);
}

TEST(KFunctionTest, SingleFiberHasNoPairs) {
  const std::vector<Fiber> one{short_line("a", {0.5, 0.5, 0.5})};
  KConfig config = small_config();
  const KResult r = k_function(one, config, kUnit);
  EXPECT_EQ(r.n_in_window, 1);
  for (const double v : r.k) EXPECT_EQ(v, 0.0);
}

TEST(KFunctionTest, TwoIdenticalShapesFiveApart) {
  const std::vector<Fiber> two{Fiber("a", {{10, 10, 10}, {12, 11, 10}}),
                               Fiber("b", {{15, 10, 10}, {17, 11, 10}})};
  KConfig config;
  config.t_grid = {4.9, 5.0, 10.0};
  config.s_grid = {1e-6, 1.0, 50.0};
  const KResult r = k_function(two, config, kBox);
  EXPECT_EQ(r.n_in_window, 2);
  for (std::size_t si = 0; si < 3; ++si) {
    EXPECT_EQ(r.at(0, si), 0.0);
    EXPECT_EQ(r.at(1, si), 1.0);
    EXPECT_EQ(r.at(2, si), 1.0);
  }
}

TEST(KFunctionTest, ErrorPaths) {
  const std::vector<Fiber> outside{short_line("a", {5, 5, 5})};
  KConfig config = small_config();
  EXPECT_THROW(k_function(outside, config, kUnit), EmptyWindowError);
  const std::vector<Fiber> inside{short_line("a", {0.5, 0.5, 0.5})};
  config.t_grid = {5, 5};
  EXPECT_THROW(k_function(inside, config, kUnit), InvalidParameter);
  config.t_grid = {};
  EXPECT_THROW(k_function(inside, config, kUnit), InvalidParameter);
  config.t_grid = {1};
  config.s_grid = {2, 1};
  EXPECT_THROW(k_function(inside, config, kUnit), InvalidParameter);
  config.s_grid = {-1, 1};
  EXPECT_THROW(k_function(inside, config, kUnit), InvalidParameter);
}

TEST(PairDistancesTest, TwoFibersMirrored) {
  const std::vector<Fiber> two{Fiber("a", {{10, 10, 10}, {12, 11, 10}}),
                               Fiber("b", {{15, 10, 10}, {15, 13, 11}})};
  KConfig config = small_config();
  const auto recs = pair_distances(two, config, kBox);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].first_id, "a");
  EXPECT_EQ(recs[0].second_id, "b");
  EXPECT_EQ(recs[1].first_id, "b");
  EXPECT_EQ(recs[1].second_id, "a");
  EXPECT_EQ(recs[0].center_distance, recs[1].center_distance);
  EXPECT_EQ(recs[0].shape_distance, recs[1].shape_distance);
  EXPECT_GT(recs[0].shape_distance, 0.0);
}

TEST(PairDistancesTest, OutsideFiberNeverFirst) {
  const std::vector<Fiber> fibers{short_line("in", {0.5, 0.5, 0.5}),
                                  short_line("out", {1.5, 0.5, 0.5})};
  KConfig config = small_config();
  const auto recs = pair_distances(fibers, config, kUnit);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].first_id, "in");
  EXPECT_EQ(recs[0].second_id, "out");
}

// Recount straight from the definition over every ordered pair.
std::vector<std::int64_t> brute_force_counts(std::span<const Fiber> fibers,
                                             const KConfig& config,
                                             const Window& w) {
  const auto prepared = prepare_fibers(fibers, config);
  std::vector<std::int64_t> counts(config.t_grid.size() * config.s_grid.size(), 0);
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    if (!w.contains(prepared.centers[i])) continue;
    for (std::size_t j = 0; j < fibers.size(); ++j) {
      if (i == j) continue;
      const double cd = distance(prepared.centers[i], prepared.centers[j]);
      const double sd = shape_distance(prepared, i, j, config);
      for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
        for (std::size_t si = 0; si < config.s_grid.size(); ++si) {
          if (cd <= config.t_grid[ti] && sd <= config.s_grid[si]) {
            ++counts[ti * config.s_grid.size() + si];
          }
        }
      }
    }
  }
  return counts;
}

TEST(KFunctionTest, MatchesBruteForceAndAllPairs) {
  for (const auto process : {Process::kUniformLines, Process::kUniformBrownian,
                             Process::kClusteredLines}) {
    const auto fibers = small_dataset(process, 42, 60);
    KConfig config = small_config();
    const Window w = kBox.inset(0.13);
    const KResult grid = k_function(fibers, config, w);
    config.enumeration = PairEnumeration::kAllPairs;
    const KResult all = k_function(fibers, config, w);
    EXPECT_EQ(grid.counts, all.counts);
    EXPECT_EQ(grid.k, all.k);
    EXPECT_EQ(grid.counts, brute_force_counts(fibers, config, w));
    for (std::size_t c = 0; c < grid.k.size(); ++c) {
      EXPECT_EQ(grid.k[c], static_cast<double>(grid.counts[c]) /
                               static_cast<double>(grid.n_in_window));
      EXPECT_EQ(std::llround(grid.k[c] * static_cast<double>(grid.n_in_window)),
                grid.counts[c]);
    }
  }
}

TEST(KFunctionTest, ThresholdingPairRecordsReproducesMatrix) {
  const auto fibers = small_dataset(Process::kUniformSpirals, 43);
  const KConfig config = small_config();
  const Window w = kBox.inset(0.13);
  const auto recs = pair_distances(fibers, config, w);
  const KResult r = k_function(fibers, config, w);
  for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
    for (std::size_t si = 0; si < config.s_grid.size(); ++si) {
      std::int64_t count = 0;
      for (const auto& rec : recs) {
        if (rec.center_distance <= config.t_grid[ti] &&
            rec.shape_distance <= config.s_grid[si]) {
          ++count;
        }
      }
      EXPECT_EQ(count, r.count_at(ti, si));
    }
  }
}

TEST(KFunctionTest, MonotoneNonnegativeAndFinite) {
  const auto fibers = small_dataset(Process::kUniformBrownian, 44);
  const KResult r = k_function(fibers, small_config(), kBox.inset(0.13));
  for (std::size_t ti = 0; ti < r.t_grid.size(); ++ti) {
    for (std::size_t si = 0; si < r.s_grid.size(); ++si) {
      EXPECT_GE(r.at(ti, si), 0.0);
      EXPECT_TRUE(std::isfinite(r.at(ti, si)));
      if (ti > 0) EXPECT_LE(r.at(ti - 1, si), r.at(ti, si));
      if (si > 0) EXPECT_LE(r.at(ti, si - 1), r.at(ti, si));
    }
  }
}

TEST(KFunctionTest, SaturatesAtLargeRadii) {
  const auto fibers = small_dataset(Process::kUniformLines, 45, 40);
  KConfig config = small_config();
  const Window w = kBox.inset(0.13);
  std::vector<Point3> centers;
  for (const auto& f : fibers) centers.push_back(center_of(f, config.center_kind));
  const Window bb = bounding_box(centers);
  const double diam = distance(bb.lower(), bb.upper());
  config.t_grid = {diam};
  config.s_grid = {saturation_bound(fibers, config)};
  const KResult r = k_function(fibers, config, w);
  const auto n = r.n_in_window;
  EXPECT_EQ(r.counts[0], n * (static_cast<std::int64_t>(fibers.size()) - 1));
}

TEST(KFunctionTest, TranslationInvariant) {
  const auto fibers = small_dataset(Process::kUniformSpirals, 46);
  const KConfig config = small_config();
  const Window w = kBox.inset(0.13);
  const Vec3 v{17.25, -3.5, 250.0};
  std::vector<Fiber> moved;
  for (const auto& f : fibers) moved.push_back(translate(f, v));
  const KResult a = k_function(fibers, config, w);
  const KResult b = k_function(moved, config, w.translated(v));
  EXPECT_EQ(a.n_in_window, b.n_in_window);
  ASSERT_EQ(a.k.size(), b.k.size());
  for (std::size_t c = 0; c < a.k.size(); ++c) EXPECT_NEAR(a.k[c], b.k[c], 1e-9);
}

TEST(KFunctionTest, OrientationInvariantDominatesOriented) {
  const auto fibers = small_dataset(Process::kUniformLines, 47);
  KConfig config = small_config();
  const KResult inv = k_function(fibers, config, kBox.inset(0.13));
  config.orientation_invariant = false;
  const KResult ori = k_function(fibers, config, kBox.inset(0.13));
  for (std::size_t c = 0; c < inv.k.size(); ++c) EXPECT_GE(inv.k[c], ori.k[c]);
}

TEST(KFunctionTest, ThreadCountDoesNotChangeResult) {
  const auto fibers = small_dataset(Process::kUniformBrownian, 48);
  KConfig config = small_config();
  config.threads = 1;
  const KResult one = k_function(fibers, config, kBox.inset(0.13));
  config.threads = 4;
  const KResult four = k_function(fibers, config, kBox.inset(0.13));
  EXPECT_EQ(one.k, four.k);
}

TEST(KFunctionTest, CenterKindIsUsedForWindowAndShapes) {
  // A hook-shaped fiber whose mass center and arclength midpoint differ.
  const std::vector<Fiber> fibers{
      Fiber("a", {{0.1, 0.1, 0.5}, {0.9, 0.1, 0.5}, {0.9, 0.3, 0.5}}),
      Fiber("b", {{0.2, 0.6, 0.5}, {0.4, 0.6, 0.5}})};
  KConfig config;
  config.t_grid = {10};
  config.s_grid = {10};
  config.center_kind = CenterKind::kArclengthMidpoint;
  const auto recs = pair_distances(fibers, config, kUnit);
  ASSERT_EQ(recs.size(), 2u);
  const Point3 ca = center_of(fibers[0], CenterKind::kArclengthMidpoint);
  const Point3 cb = center_of(fibers[1], CenterKind::kArclengthMidpoint);
  EXPECT_DOUBLE_EQ(recs[0].center_distance, distance(ca, cb));
}

}  // namespace
}  // namespace fiberk
