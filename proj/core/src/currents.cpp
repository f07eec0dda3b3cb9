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

#include "fiberk/currents.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

#include "fiberk/error.hpp"

namespace fiberk {
namespace {

constexpr double kStepBoundaryTolerance = 1e-12;
constexpr double kPieceSlack = 1e-12;

}  // namespace

KernelParams::KernelParams(double p, double sigma, double truncation)
    : p_(p), sigma_(sigma), truncation_(truncation) {
  if (!(p > 0.0) || std::isnan(p)) {
    throw InvalidParameter("kernel exponent p must be > 0");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter("kernel bandwidth sigma must be positive and finite");
  }
  if (!(truncation >= 0.0) || !(truncation < 1.0)) {
    throw InvalidParameter("kernel truncation must be in [0, 1)");
  }
  inv_sigma2_ = 1.0 / (sigma * sigma);
  if (truncation == 0.0) {
    cutoff2_ = std::numeric_limits<double>::infinity();
  } else if (is_step()) {
    // Zero beyond the boundary; keep the boundary itself.
    cutoff2_ = sigma * sigma * (1.0 + 4.0 * kStepBoundaryTolerance);
  } else {
    // exp(-(r / sigma)^p / 2) < truncation  <=>  (r / sigma)^2 > (2 ln(1/t))^(2/p)
    cutoff2_ = sigma * sigma * std::pow(2.0 * std::log(1.0 / truncation), 2.0 / p);
  }
}

double KernelParams::at_squared_distance(double r2) const {
  if (is_step()) {
    // |r - sigma| <= tol * sigma, expressed on squares.
    const double ratio = std::sqrt(r2 * inv_sigma2_);
    if (std::abs(ratio - 1.0) <= kStepBoundaryTolerance) return std::exp(-0.5);
    return ratio < 1.0 ? 1.0 : 0.0;
  }
  if (p_ == 2.0) return std::exp(-0.5 * r2 * inv_sigma2_);
  return std::exp(-0.5 * std::pow(r2 * inv_sigma2_, 0.5 * p_));
}

KernelParams default_kernel() { return KernelParams(2.0, 100.0 / 3.0); }

double default_spacing(const KernelParams& params) {
  return params.sigma() / 20.0;
}

double kernel_eval(const KernelParams& params, const Point3& x, const Point3& y) {
  return params.at_squared_distance(squared_distance(x, y));
}

namespace {

auto atom_key(const DiracAtom& a) {
  return std::tie(a.position.x, a.position.y, a.position.z, a.weighted_tangent.x,
                  a.weighted_tangent.y, a.weighted_tangent.z);
}

}  // namespace

DiscreteCurrent::DiscreteCurrent(std::vector<DiracAtom> atoms,
                                 std::string source_id)
    : atoms_(std::move(atoms)), source_id_(std::move(source_id)) {
  if (atoms_.empty()) {
    throw ValidationError("current '" + source_id_ + "' has no atoms");
  }
  // Atoms are kept sorted by position so that a current and its flip sum
  // their terms in the same order.
  std::sort(atoms_.begin(), atoms_.end(),
            [](const DiracAtom& a, const DiracAtom& b) { return atom_key(a) < atom_key(b); });
  for (const auto& atom : atoms_) {
    if (!is_finite(atom.position) || !is_finite(atom.weighted_tangent)) {
      throw ValidationError("current '" + source_id_ + "' has a non-finite atom");
    }
    if (squared_norm(atom.weighted_tangent) == 0.0) {
      throw ValidationError("current '" + source_id_ +
                            "' has an atom with zero weight");
    }
  }
}

double DiscreteCurrent::total_weight() const {
  double total = 0.0;
  for (const auto& atom : atoms_) total += norm(atom.weighted_tangent);
  return total;
}

DiscreteCurrent discretize(const Fiber& fiber, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidParameter("discretization spacing must be positive and finite");
  }
  const auto pts = fiber.points();
  std::vector<DiracAtom> atoms;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point3& a = pts[i - 1];
    const Point3& b = pts[i];
    const double len = distance(a, b);
    const auto pieces = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(len / spacing * (1.0 - kPieceSlack))));
    const double inv = 1.0 / static_cast<double>(pieces);
    const Vec3 chord = (b - a) * inv;
    for (std::size_t k = 0; k < pieces; ++k) {
      const double u = (static_cast<double>(k) + 0.5) * inv;
      atoms.push_back({lerp(a, b, u), chord});
    }
  }
  return DiscreteCurrent(std::move(atoms), fiber.id());
}

DiscreteCurrent flip(const DiscreteCurrent& current) {
  std::vector<DiracAtom> atoms(current.atoms().begin(), current.atoms().end());
  for (auto& atom : atoms) atom.weighted_tangent = -atom.weighted_tangent;
  return DiscreteCurrent(std::move(atoms), current.source_id());
}

DiscreteCurrent translate(const DiscreteCurrent& current, const Vec3& v) {
  std::vector<DiracAtom> atoms(current.atoms().begin(), current.atoms().end());
  for (auto& atom : atoms) atom.position += v;
  return DiscreteCurrent(std::move(atoms), current.source_id());
}

namespace {

// Strict total order on atom sequences (size, then lexicographic) used to pick
// which operand drives the outer summation loop.
bool canonical_less(std::span<const DiracAtom> a, std::span<const DiracAtom> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ka = atom_key(a[i]);
    const auto kb = atom_key(b[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

double ordered_sum(std::span<const DiracAtom> outer,
                   std::span<const DiracAtom> inner, const KernelParams& params) {
  const double cutoff2 = params.cutoff_squared();
  double total = 0.0;
  for (const auto& x : outer) {
    double row = 0.0;
    for (const auto& y : inner) {
      const double r2 = squared_distance(x.position, y.position);
      if (r2 > cutoff2) continue;
      row += params.at_squared_distance(r2) *
             dot(x.weighted_tangent, y.weighted_tangent);
    }
    total += row;
  }
  return total;
}

}  // namespace

double inner_product(const DiscreteCurrent& a, const DiscreteCurrent& b,
                     const KernelParams& params) {
  if (canonical_less(b.atoms(), a.atoms())) {
    return ordered_sum(b.atoms(), a.atoms(), params);
  }
  return ordered_sum(a.atoms(), b.atoms(), params);
}

double squared_norm(const DiscreteCurrent& a, const KernelParams& params) {
  return ordered_sum(a.atoms(), a.atoms(), params);
}

double norm(const DiscreteCurrent& a, const KernelParams& params) {
  return std::sqrt(std::max(0.0, squared_norm(a, params)));
}

double distance_from_gram(double aa, double bb, double ab) {
  return std::sqrt(std::max(0.0, aa + bb - 2.0 * ab));
}

double min_distance_from_gram(double aa, double bb, double ab) {
  return std::sqrt(std::max(0.0, aa + bb - 2.0 * std::abs(ab)));
}

double distance(const DiscreteCurrent& a, const DiscreteCurrent& b,
                const KernelParams& params) {
  return distance_from_gram(squared_norm(a, params), squared_norm(b, params),
                            inner_product(a, b, params));
}

double min_distance(const DiscreteCurrent& a, const DiscreteCurrent& b,
                    const KernelParams& params) {
  return min_distance_from_gram(squared_norm(a, params), squared_norm(b, params),
                                inner_product(a, b, params));
}

double short_line_limit(const Point3& x_u, const Point3& x_v, const Vec3& u,
                        const Vec3& v, const KernelParams& params) {
  const double d0 = dot(u, u) + dot(v, v);
  const double d1 = std::abs(dot(u, v));
  return d0 - 2.0 * kernel_eval(params, x_u, x_v) * d1;
}

}  // namespace fiberk
