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

#include "fiberk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "fiberk/error.hpp"

namespace fiberk {
namespace {

std::string format_with(double value, std::chars_format fmt, int precision) {
  char buf[64];
  const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, value, fmt)
                                 : std::to_chars(buf, buf + sizeof buf, value,
                                                 fmt, precision);
  return std::string(buf, res.ptr);
}

// Splits on '\n'; a final newline does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) return out;
    pos = end + 1;
  }
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, "cannot parse '" + std::string(tok) + "' as a number");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, "non-finite value '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, "cannot parse '" + std::string(tok) + "' as a count");
  }
  return v;
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (const char c : id) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') return false;
  }
  return true;
}

}  // namespace

std::string format_shortest(double value) {
  return format_with(value, std::chars_format::general, -1);
}

std::string format_17g(double value) {
  return format_with(value, std::chars_format::general, 17);
}

std::vector<Fiber> parse_fibers(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'fiberset v1 <n>' header");

  const auto header = tokens(lines[0]);
  if (header.size() != 3 || header[0] != "fiberset" || header[1] != "v1") {
    throw ParseError(1, "expected header 'fiberset v1 <n_fibers>'");
  }
  const std::size_t n_fibers = parse_count(header[2], 1);

  std::vector<Fiber> fibers;
  std::size_t idx = 1;  // index of the next line to read
  for (std::size_t f = 0; f < n_fibers; ++f) {
    const std::size_t lineno = idx + 1;
    if (idx >= lines.size()) {
      throw ParseError(lineno, "expected 'fiber <id> <n_points>' for fiber " +
                                   std::to_string(f + 1) + " of " +
                                   std::to_string(n_fibers) +
                                   ", found end of file");
    }
    const auto head = tokens(lines[idx]);
    if (head.size() != 3 || head[0] != "fiber") {
      throw ParseError(lineno, "expected 'fiber <id> <n_points>'");
    }
    const std::string id(head[1]);
    const std::size_t n_points = parse_count(head[2], lineno);
    ++idx;

    std::vector<Point3> pts;
    pts.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p, ++idx) {
      const std::size_t pl = idx + 1;
      if (idx >= lines.size()) {
        throw ParseError(pl, "expected point " + std::to_string(p + 1) + " of " +
                                 std::to_string(n_points) + " for fiber '" + id +
                                 "', found end of file");
      }
      const auto xyz = tokens(lines[idx]);
      if (xyz.size() != 3) {
        throw ParseError(pl, "expected 'x y z' for point " +
                                 std::to_string(p + 1) + " of fiber '" + id + "'");
      }
      pts.push_back({parse_real(xyz[0], pl), parse_real(xyz[1], pl),
                     parse_real(xyz[2], pl)});
    }
    fibers.emplace_back(id, std::move(pts));
  }
  for (; idx < lines.size(); ++idx) {
    if (!tokens(lines[idx]).empty()) {
      throw ParseError(idx + 1, "unexpected content after the declared " +
                                    std::to_string(n_fibers) + " fibers");
    }
  }
  return fibers;
}

std::string format_fibers(std::span<const Fiber> fibers) {
  std::string out = "fiberset v1 " + std::to_string(fibers.size()) + "\n";
  for (const auto& f : fibers) {
    if (!valid_id(f.id())) {
      throw ValidationError("fiber id '" + f.id() +
                            "' is empty or contains whitespace or commas");
    }
    out += "fiber " + f.id() + " " + std::to_string(f.size()) + "\n";
    for (const auto& p : f.points()) {
      out += format_shortest(p.x);
      out += ' ';
      out += format_shortest(p.y);
      out += ' ';
      out += format_shortest(p.z);
      out += '\n';
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return text;
}

std::vector<Fiber> read_fibers(const std::filesystem::path& path) {
  return parse_fibers(read_file(path));
}

void write_fibers(std::span<const Fiber> fibers,
                  const std::filesystem::path& path) {
  write_file_atomic(path, format_fibers(fibers));
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error while writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                  "': " + ec.message());
  }
}

std::string format_k_csv(const KResult& result) {
  std::string out = "t,s,k\n";
  for (std::size_t ti = 0; ti < result.t_grid.size(); ++ti) {
    for (std::size_t si = 0; si < result.s_grid.size(); ++si) {
      out += format_17g(result.t_grid[ti]);
      out += ',';
      out += format_17g(result.s_grid[si]);
      out += ',';
      out += format_17g(result.at(ti, si));
      out += '\n';
    }
  }
  return out;
}

KTable parse_k_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "t,s,k") {
    throw ParseError(1, "expected header 't,s,k'");
  }
  KTable table;
  std::vector<double> ts, ss;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 3) throw ParseError(i + 1, "expected 3 columns");
    ts.push_back(parse_real(cells[0], i + 1));
    ss.push_back(parse_real(cells[1], i + 1));
    table.k.push_back(parse_real(cells[2], i + 1));
  }
  if (ts.empty()) throw ParseError(2, "no rows");
  for (std::size_t i = 0; i < ts.size() && ts[i] == ts[0]; ++i) {
    table.s_grid.push_back(ss[i]);
  }
  const std::size_t ns = table.s_grid.size();
  if (ts.size() % ns != 0) throw ParseError(lines.size(), "grid is not rectangular");
  for (std::size_t r = 0; r < ts.size(); ++r) {
    if (r % ns == 0) table.t_grid.push_back(ts[r]);
    if (ts[r] != table.t_grid.back() || ss[r] != table.s_grid[r % ns]) {
      throw ParseError(r + 2, "rows are not in t-major grid order");
    }
  }
  return table;
}

std::string format_distance_csv(std::span<const DistanceRow> rows) {
  std::string out = "id_a,id_b,center_dist,shape_dist\n";
  for (const auto& r : rows) {
    out += r.id_a;
    out += ',';
    out += r.id_b;
    out += ',';
    out += format_17g(r.center_distance);
    out += ',';
    out += format_17g(r.shape_distance);
    out += '\n';
  }
  return out;
}

std::vector<DistanceRow> parse_distance_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "id_a,id_b,center_dist,shape_dist") {
    throw ParseError(1, "expected header 'id_a,id_b,center_dist,shape_dist'");
  }
  std::vector<DistanceRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 4) throw ParseError(i + 1, "expected 4 columns");
    rows.push_back({std::string(cells[0]), std::string(cells[1]),
                    parse_real(cells[2], i + 1), parse_real(cells[3], i + 1)});
  }
  return rows;
}

}  // namespace fiberk
