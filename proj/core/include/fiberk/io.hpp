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

// Plain-text interchange formats.
//
// Fiber file (LF line endings, single spaces, '.' decimal separator):
//
//   fiberset v1 <n_fibers>
//   fiber <id> <n_points>
//   <x> <y> <z>
//   ...
//
// K-function CSV: header "t,s,k", one row per grid cell in t-major order,
// numbers printed with 17 significant digits.
//
// Number formatting and parsing go through <charconv>, so output does not
// depend on the process locale.

#ifndef FIBERK_IO_HPP_
#define FIBERK_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiberk/fiber.hpp"
#include "fiberk/kfunction.hpp"

namespace fiberk {

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);
/// 17 significant digits, "%.17g" style.
std::string format_17g(double value);

/// Throws ParseError (1-based line number) on malformed input and
/// ValidationError for fibers that violate their invariants.
std::vector<Fiber> parse_fibers(std::string_view text);
std::string format_fibers(std::span<const Fiber> fibers);

/// Throws IoError when the file cannot be read, otherwise as parse_fibers.
std::vector<Fiber> read_fibers(const std::filesystem::path& path);
void write_fibers(std::span<const Fiber> fibers,
                  const std::filesystem::path& path);

std::string format_k_csv(const KResult& result);

struct KTable {
  std::vector<double> t_grid;
  std::vector<double> s_grid;
  std::vector<double> k;  // row-major like KResult::k
};

/// Inverse of format_k_csv for the grid and matrix.
KTable parse_k_csv(std::string_view text);

/// "id_a,id_b,center_dist,shape_dist" rows.
struct DistanceRow {
  std::string id_a;
  std::string id_b;
  double center_distance = 0.0;
  double shape_distance = 0.0;
};
std::string format_distance_csv(std::span<const DistanceRow> rows);
std::vector<DistanceRow> parse_distance_csv(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed write never leaves a partial file behind. Throws IoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace fiberk

#endif  // FIBERK_IO_HPP_
