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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string_view>
#include <thread>

#include "CLI11.hpp"
#include "fiberk/fiberk.hpp"

namespace fiberk::cli {
namespace {

// Bad flag value; reported with the usage text and exit code 2.
struct UsageError : Error {
  using Error::Error;
};

double parse_number(std::string_view text, const std::string& flag) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw UsageError(flag + ": cannot parse '" + std::string(text) +
                     "' as a number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = text.find(',', pos);
    out.push_back(parse_number(
        std::string_view(text).substr(pos, end == std::string::npos ? end : end - pos),
        flag));
    if (end == std::string::npos) return out;
    pos = end + 1;
  }
}

Window parse_box(const std::string& text, const std::string& flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 6) {
    throw UsageError(flag + " expects 'x0,y0,z0,x1,y1,z1'");
  }
  try {
    return Window({v[0], v[1], v[2]}, {v[3], v[4], v[5]});
  } catch (const InvalidParameter& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// "start:stop:step" (stop included when aligned) or a comma list.
std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
      throw UsageError(flag + " expects 'start:stop:step'");
    }
    const std::string_view sv(text);
    try {
      grid = linear_grid(parse_number(sv.substr(0, a), flag),
                         parse_number(sv.substr(a + 1, b - a - 1), flag),
                         parse_number(sv.substr(b + 1), flag));
    } catch (const InvalidParameter& e) {
      throw UsageError(flag + ": " + e.what());
    }
  } else {
    grid = parse_list(text, flag);
  }
  try {
    validate_grid(grid, flag.c_str());
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  return grid;
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return KernelParams::kInfinity;
  return parse_number(text, "--p");
}

CenterKind parse_center(const std::string& text) {
  if (text == "mass") return CenterKind::kMassCenter;
  if (text == "midpoint") return CenterKind::kArclengthMidpoint;
  throw UsageError("--center expects 'mass' or 'midpoint'");
}

// Options shared by kfun and dist.
struct ShapeOptions {
  std::string in;
  std::string out;
  double sigma = 100.0 / 3.0;
  std::string p = "2";
  std::optional<double> spacing;
  bool oriented = false;
  std::string center = "mass";
  unsigned threads = 0;

  void add_to(CLI::App& app) {
    app.add_option("--in", in, "Input fiber file")->required();
    app.add_option("--out", out, "Output CSV path")->required();
    app.add_option("--sigma", sigma, "Kernel bandwidth")->capture_default_str();
    app.add_option("--p", p, "Kernel exponent, or 'inf'")->capture_default_str();
    app.add_option("--spacing", spacing, "Discretization spacing (default sigma/20)");
    app.add_flag("--oriented", oriented,
                 "Use the oriented currents distance instead of the "
                 "orientation-minimal one");
    app.add_option("--center", center, "Center function: mass | midpoint")
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  KConfig to_config() const {
    KConfig config;
    try {
      config.kernel = KernelParams(parse_exponent(p), sigma);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    config.center_kind = parse_center(center);
    config.orientation_invariant = !oriented;
    config.spacing = spacing;
    if (spacing && !(*spacing > 0.0)) throw UsageError("--spacing must be > 0");
    config.threads = threads;
    return config;
  }
};

struct SimulateCommand {
  std::string process;
  int n = 500;
  double length = 40.0;
  std::string box = "0,0,0,100,100,100";
  std::uint64_t seed = 0;
  std::string out;
  int points = 100;
  std::string center = "mass";
  bool poisson = false;
  int clusters = 10;
  double cluster_std = 5.0;
  double jitter = 0.1;
  double spiral_radius = default_spiral_shape().radius_fraction;
  double spiral_turns = default_spiral_shape().turns;

  void add_to(CLI::App& app) {
    app.add_option("--process", process, "lines | spirals | brownian | clustered")
        ->required();
    app.add_option("--n", n, "Number of fibers")->capture_default_str();
    app.add_option("--length", length, "Fiber arclength")->capture_default_str();
    app.add_option("--box", box, "Center domain x0,y0,z0,x1,y1,z1")
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--out", out, "Output fiber file")->required();
    app.add_option("--points", points, "Vertices per fiber")->capture_default_str();
    app.add_option("--center", center, "Center function: mass | midpoint")
        ->capture_default_str();
    app.add_flag("--poisson", poisson, "Draw a Poisson(n) number of fibers");
    app.add_option("--clusters", clusters, "Clusters (clustered process)")
        ->capture_default_str();
    app.add_option("--cluster-std", cluster_std, "Cluster offset std. deviation")
        ->capture_default_str();
    app.add_option("--jitter", jitter, "Direction jitter std. deviation")
        ->capture_default_str();
    app.add_option("--spiral-radius", spiral_radius,
                   "Helix radius as a fraction of the fiber length")
        ->capture_default_str();
    app.add_option("--spiral-turns", spiral_turns, "Helix turns")
        ->capture_default_str();
  }

  int run(std::ostream& err) const {
    SimConfig config;
    const auto proc = parse_process(process);
    if (!proc) throw UsageError("--process expects lines|spirals|brownian|clustered");
    config.process = *proc;
    config.n_fibers = n;
    config.fiber_length = length;
    config.box = parse_box(box, "--box");
    config.points_per_fiber = points;
    config.seed = seed;
    config.count_mode = poisson ? CountMode::kPoisson : CountMode::kFixed;
    config.center_kind = parse_center(center);
    config.spiral = {spiral_radius, spiral_turns};
    config.cluster = {clusters, cluster_std, jitter};
    try {
      validate(config);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    const auto fibers = make_dataset(config);
    write_fibers(fibers, out);
    err << "wrote " << fibers.size() << " fibers to " << out << "\n";
    return kOk;
  }
};

struct KfunCommand {
  ShapeOptions shape;
  std::string t_grid = "5:50:5";
  std::string s_grid = "10:100:10";
  std::optional<std::string> window;
  std::optional<double> inset;
  std::optional<double> segment_length;

  void add_to(CLI::App& app) {
    shape.add_to(app);
    app.add_option("--t-grid", t_grid, "Center-distance radii start:stop:step")
        ->capture_default_str();
    app.add_option("--s-grid", s_grid, "Shape-distance radii start:stop:step")
        ->capture_default_str();
    auto* w = app.add_option("--window", window,
                             "Observation window x0,y0,z0,x1,y1,z1");
    auto* i = app.add_option("--inset", inset,
                             "Window = bounding box of the centers shrunk by "
                             "this fraction per side (default 0.13)");
    w->excludes(i);
    app.add_option("--segment-length", segment_length,
                   "Split fibers into pieces of at most this arclength first");
  }

  int run(std::ostream& out, std::ostream& err) const {
    KConfig config = shape.to_config();
    config.t_grid = parse_grid(t_grid, "--t-grid");
    config.s_grid = parse_grid(s_grid, "--s-grid");
    if (segment_length && !(*segment_length > 0.0)) {
      throw UsageError("--segment-length must be > 0");
    }
    if (inset && !(*inset >= 0.0 && *inset < 0.5)) {
      throw UsageError("--inset must be in [0, 0.5)");
    }
    std::optional<Window> fixed;
    if (window) fixed = parse_box(*window, "--window");

    std::vector<Fiber> fibers = read_fibers(shape.in);
    if (segment_length) {
      std::vector<Fiber> pieces;
      for (const auto& f : fibers) {
        for (auto& piece : segment(f, *segment_length)) {
          pieces.push_back(std::move(piece));
        }
      }
      fibers = std::move(pieces);
    }
    if (fibers.empty()) throw EmptyWindowError("input contains no fibers");

    Window win = fixed ? *fixed : [&] {
      std::vector<Point3> centers;
      for (const auto& f : fibers) centers.push_back(center_of(f, config.center_kind));
      return bounding_box(centers).inset(inset.value_or(0.13));
    }();

    const KResult result = k_function(fibers, config, win);
    write_file_atomic(shape.out, format_k_csv(result));
    out << "N=" << result.n_in_window << " |W|=" << format_shortest(win.volume())
        << " nu_hat=" << format_shortest(result.intensity_hat) << "\n";
    err << "wrote " << result.t_grid.size() * result.s_grid.size()
        << " grid cells to " << shape.out << "\n";
    return kOk;
  }
};

struct DistCommand {
  ShapeOptions shape;

  void add_to(CLI::App& app) { shape.add_to(app); }

  int run(std::ostream& err) const {
    const KConfig config = shape.to_config();
    const auto fibers = read_fibers(shape.in);
    const auto prepared = prepare_fibers(fibers, config);

    std::vector<DistanceRow> rows;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      for (std::size_t j = i + 1; j < fibers.size(); ++j) pairs.emplace_back(i, j);
    }
    rows.resize(pairs.size());
    // Serial when threads == 1; pair results are independent either way.
    std::vector<double> shape_dist(pairs.size());
    const auto body = [&](std::size_t k) {
      shape_dist[k] = shape_distance(prepared, pairs[k].first, pairs[k].second,
                                     config);
    };
    const unsigned threads =
        config.threads != 0 ? config.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::jthread> pool;
    const std::size_t chunk = (pairs.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads && w * chunk < pairs.size(); ++w) {
      pool.emplace_back([&, w] {
        const std::size_t end = std::min(pairs.size(), (w + 1) * chunk);
        for (std::size_t k = w * chunk; k < end; ++k) body(k);
      });
    }
    pool.clear();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      rows[k] = {fibers[i].id(), fibers[j].id(),
                 distance(prepared.centers[i], prepared.centers[j]),
                 shape_dist[k]};
    }
    write_file_atomic(shape.out, format_distance_csv(rows));
    err << "wrote " << rows.size() << " pairs to " << shape.out << "\n";
    return kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Currents-based K-function analysis of fiber patterns", "fiberk"};
  app.require_subcommand(1);

  SimulateCommand simulate;
  KfunCommand kfun;
  DistCommand dist;
  auto* sim_app = app.add_subcommand("simulate", "Generate a reference fiber data set");
  simulate.add_to(*sim_app);
  auto* kfun_app = app.add_subcommand("kfun", "Estimate the two-parameter K-function");
  kfun.add_to(*kfun_app);
  auto* dist_app = app.add_subcommand("dist", "Pairwise center and shape distances");
  dist.add_to(*dist_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == sim_app) return simulate.run(err);
    if (active == kfun_app) return kfun.run(out, err);
    return dist.run(err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kUsageError;
  } catch (const EmptyWindowError& e) {
    err << "error: " << e.what() << "\n";
    return kEmptyWindow;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFileError;
  }
}

}  // namespace fiberk::cli
