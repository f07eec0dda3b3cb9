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

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "fiberk/io.hpp"

namespace fiberk {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fiberk_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SimulateIsDeterministic) {
  ASSERT_EQ(run({"simulate", "--process", "spirals", "--n", "30", "--seed", "4",
                 "--out", path("a.txt")}),
            cli::kOk);
  ASSERT_EQ(run({"simulate", "--process", "spirals", "--n", "30", "--seed", "4",
                 "--out", path("b.txt")}),
            cli::kOk);
  EXPECT_EQ(read_file(path("a.txt")), read_file(path("b.txt")));
  EXPECT_EQ(read_fibers(path("a.txt")).size(), 30u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"simulate", "--process", "lines"}), cli::kUsageError);
  EXPECT_NE(err_.str().find("--out"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--process", "helix", "--out", path("x.txt")}),
            cli::kUsageError);
  EXPECT_EQ(run({"frobnicate"}), cli::kUsageError);
  EXPECT_EQ(run({}), cli::kUsageError);
  EXPECT_EQ(run({"kfun", "--in", path("x.txt"), "--out", path("k.csv"),
                 "--t-grid", "5:1:1"}),
            cli::kUsageError);
  EXPECT_EQ(run({"kfun", "--in", path("x.txt"), "--out", path("k.csv"),
                 "--window", "0,0,0,1,1,1", "--inset", "0.1"}),
            cli::kUsageError);
  EXPECT_EQ(run({"kfun", "--in", path("x.txt"), "--out", path("k.csv"),
                 "--sigma", "-1"}),
            cli::kUsageError);
}

TEST_F(CliTest, MissingInputIsFileError) {
  EXPECT_EQ(run({"kfun", "--in", path("missing.txt"), "--out", path("k.csv")}),
            cli::kFileError);
  EXPECT_FALSE(fs::exists(path("k.csv")));
  EXPECT_EQ(run({"dist", "--in", path("missing.txt"), "--out", path("d.csv")}),
            cli::kFileError);
}

TEST_F(CliTest, MalformedInputIsFileError) {
  write_file_atomic(path("bad.txt"), "fiberset v1 1\nfiber a 3\n0 0 0\n");
  EXPECT_EQ(run({"kfun", "--in", path("bad.txt"), "--out", path("k.csv")}),
            cli::kFileError);
  EXPECT_NE(err_.str().find("line"), std::string::npos);
}

TEST_F(CliTest, KfunSingleCellAndSummary) {
  ASSERT_EQ(run({"simulate", "--process", "lines", "--n", "60", "--seed", "1",
                 "--out", path("f.txt")}),
            cli::kOk);
  ASSERT_EQ(run({"kfun", "--in", path("f.txt"), "--out", path("k.csv"),
                 "--t-grid", "10:10:10", "--s-grid", "10:10:10"}),
            cli::kOk);
  EXPECT_EQ(out_.str().rfind("N=", 0), 0u);
  EXPECT_NE(out_.str().find("nu_hat="), std::string::npos);
  const KTable table = parse_k_csv(read_file(path("k.csv")));
  EXPECT_EQ(table.t_grid, std::vector<double>{10.0});
  EXPECT_EQ(table.s_grid, std::vector<double>{10.0});
  EXPECT_EQ(table.k.size(), 1u);
}

TEST_F(CliTest, KfunEmptyWindow) {
  ASSERT_EQ(run({"simulate", "--process", "lines", "--n", "10", "--seed", "1",
                 "--out", path("f.txt")}),
            cli::kOk);
  EXPECT_EQ(run({"kfun", "--in", path("f.txt"), "--out", path("k.csv"),
                 "--window", "500,500,500,600,600,600"}),
            cli::kEmptyWindow);
  write_file_atomic(path("empty.txt"), "fiberset v1 0\n");
  EXPECT_EQ(run({"kfun", "--in", path("empty.txt"), "--out", path("k.csv")}),
            cli::kEmptyWindow);
}

TEST_F(CliTest, KfunSegmentLengthSplitsFibers) {
  write_file_atomic(path("long.txt"),
                    "fiberset v1 2\n"
                    "fiber a 2\n0 50 50\n100 50 50\n"
                    "fiber b 2\n50 0 40\n50 100 40\n");
  ASSERT_EQ(run({"kfun", "--in", path("long.txt"), "--out", path("k.csv"),
                 "--window", "0,0,0,100,100,100", "--segment-length", "40",
                 "--t-grid", "100:100:100", "--s-grid", "1000:1000:1000"}),
            cli::kOk);
  EXPECT_EQ(out_.str().rfind("N=6 ", 0), 0u);
  const KTable table = parse_k_csv(read_file(path("k.csv")));
  EXPECT_DOUBLE_EQ(table.k[0], 5.0);
}

TEST_F(CliTest, KfunIsDeterministicAcrossThreads) {
  ASSERT_EQ(run({"simulate", "--process", "brownian", "--n", "60", "--seed", "2",
                 "--out", path("f.txt")}),
            cli::kOk);
  ASSERT_EQ(run({"kfun", "--in", path("f.txt"), "--out", path("k1.csv"),
                 "--threads", "1"}),
            cli::kOk);
  ASSERT_EQ(run({"kfun", "--in", path("f.txt"), "--out", path("k3.csv"),
                 "--threads", "3"}),
            cli::kOk);
  EXPECT_EQ(read_file(path("k1.csv")), read_file(path("k3.csv")));
}

TEST_F(CliTest, DistRowsAndDuplicates) {
  write_file_atomic(path("two.txt"),
                    "fiberset v1 3\n"
                    "fiber a 2\n0 0 0\n1 0 0\n"
                    "fiber b 2\n5 0 0\n6 0 0\n"
                    "fiber c 2\n5 0 0\n6 0 0\n");
  ASSERT_EQ(run({"dist", "--in", path("two.txt"), "--out", path("d.csv")}),
            cli::kOk);
  const auto rows = parse_distance_csv(read_file(path("d.csv")));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].id_a, "a");
  EXPECT_EQ(rows[0].id_b, "b");
  EXPECT_DOUBLE_EQ(rows[0].center_distance, 5.0);
  EXPECT_EQ(rows[0].shape_distance, 0.0);
  EXPECT_EQ(rows[2].id_a, "b");
  EXPECT_EQ(rows[2].id_b, "c");
  EXPECT_EQ(rows[2].center_distance, 0.0);
  EXPECT_EQ(rows[2].shape_distance, 0.0);
}

TEST_F(CliTest, DistThresholdsReproduceKfunCounts) {
  ASSERT_EQ(run({"simulate", "--process", "spirals", "--n", "40", "--seed", "5",
                 "--out", path("f.txt")}),
            cli::kOk);
  ASSERT_EQ(run({"kfun", "--in", path("f.txt"), "--out", path("k.csv"),
                 "--window", "0,0,0,100,100,100", "--t-grid", "10:50:20",
                 "--s-grid", "20:60:20"}),
            cli::kOk);
  ASSERT_EQ(run({"dist", "--in", path("f.txt"), "--out", path("d.csv")}), cli::kOk);
  const KTable table = parse_k_csv(read_file(path("k.csv")));
  const auto rows = parse_distance_csv(read_file(path("d.csv")));
  const double n = 40.0;
  for (std::size_t ti = 0; ti < table.t_grid.size(); ++ti) {
    for (std::size_t si = 0; si < table.s_grid.size(); ++si) {
      double count = 0.0;
      for (const auto& r : rows) {
        if (r.center_distance <= table.t_grid[ti] &&
            r.shape_distance <= table.s_grid[si]) {
          count += 2.0;
        }
      }
      EXPECT_EQ(table.k[ti * table.s_grid.size() + si], count / n);
    }
  }
}

}  // namespace
}  // namespace fiberk
