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

// Fibers as currents in the dual of a reproducing kernel Hilbert space.
//
// A curve acts on vector fields w through its path integral
// V(w) = \int w(x)^T tau(x) d lambda(x). Discretized, it becomes a sum of
// Dirac atoms delta_{x_i}^{alpha_i} with alpha_i = tau(x_i) * Delta x_i, and
// for the scalar kernel k(x, y) Id the dual inner product is
//
//   <a, b> = sum_i sum_j k(x_i, y_j) alpha_i . beta_j.
//
// The currents distance is the norm of the difference in that space.

#ifndef FIBERK_CURRENTS_HPP_
#define FIBERK_CURRENTS_HPP_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fiberk/fiber.hpp"
#include "fiberk/vec3.hpp"

namespace fiberk {

/// Generalized Gaussian kernel exp(-|x - y|^p / (2 sigma^p)) times the
/// identity matrix.
///
/// `p` may be +infinity, in which case the kernel is the step limit: 1 inside
/// the open ball of radius sigma, exp(-1/2) on its boundary (relative
/// tolerance 1e-12) and 0 outside. Large finite exponents (p >= 512) are a
/// smooth surrogate for that limit.
///
/// `truncation` is an opt-in approximation: atom pairs whose kernel value is
/// below it are skipped without evaluating the exponential. Zero (the
/// default) keeps every pair.
class KernelParams {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  KernelParams(double p, double sigma, double truncation = 0.0);

  double p() const noexcept { return p_; }
  double sigma() const noexcept { return sigma_; }
  double truncation() const noexcept { return truncation_; }
  bool is_step() const noexcept { return p_ == kInfinity; }

  /// Kernel value for a given squared distance.
  double at_squared_distance(double r2) const;

  /// Squared radius beyond which the kernel is below `truncation`;
  /// +infinity when truncation is off.
  double cutoff_squared() const noexcept { return cutoff2_; }

 private:
  double p_;
  double sigma_;
  double truncation_;
  double inv_sigma2_;
  double cutoff2_;
};

/// Defaults used throughout: p = 2 and sigma = 100/3, suited to fibers of
/// length 40 in a 100-unit box.
KernelParams default_kernel();

/// Default discretization spacing, sigma / 20.
double default_spacing(const KernelParams& params);

double kernel_eval(const KernelParams& params, const Point3& x, const Point3& y);

struct DiracAtom {
  Point3 position;
  Vec3 weighted_tangent;  // unit tangent times the represented arclength

  friend bool operator==(const DiracAtom&, const DiracAtom&) = default;
};

/// Finite sum of Dirac atoms approximating a fiber's current. Holds at least
/// one atom; every weighted tangent is finite and nonzero. Atoms are stored
/// sorted by position, then tangent.
class DiscreteCurrent {
 public:
  DiscreteCurrent(std::vector<DiracAtom> atoms, std::string source_id);

  std::span<const DiracAtom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::string& source_id() const noexcept { return source_id_; }

  /// Sum of |weighted_tangent|.
  double total_weight() const;

  friend bool operator==(const DiscreteCurrent&,
                         const DiscreteCurrent&) = default;

 private:
  std::vector<DiracAtom> atoms_;
  std::string source_id_;
};

/// Midpoint-rule discretization. Every fiber segment is split into
/// ceil(len / spacing) equal pieces and each piece becomes one atom at its
/// midpoint carrying the piece's chord as weighted tangent. The total weight
/// therefore equals the fiber's arclength.
/// Throws InvalidParameter if spacing <= 0.
DiscreteCurrent discretize(const Fiber& fiber, double spacing);

/// Same current with the opposite orientation: tangents negated.
DiscreteCurrent flip(const DiscreteCurrent& current);

DiscreteCurrent translate(const DiscreteCurrent& current, const Vec3& v);

/// Exactly symmetric: the two operands are put in a canonical order before
/// summation, so inner_product(a, b, k) == inner_product(b, a, k) bit for bit.
double inner_product(const DiscreteCurrent& a, const DiscreteCurrent& b,
                     const KernelParams& params);

double squared_norm(const DiscreteCurrent& a, const KernelParams& params);
double norm(const DiscreteCurrent& a, const KernelParams& params);

/// sqrt(max(0, |a|^2 + |b|^2 - 2 <a, b>)) given the three Gram entries.
double distance_from_gram(double aa, double bb, double ab);

/// Orientation-minimal variant. Since <a, flip(b)> = -<a, b>, this is
/// sqrt(max(0, |a|^2 + |b|^2 - 2 |<a, b>|)).
double min_distance_from_gram(double aa, double bb, double ab);

double distance(const DiscreteCurrent& a, const DiscreteCurrent& b,
                const KernelParams& params);

/// min(distance(a, b), distance(a, flip(b))).
double min_distance(const DiscreteCurrent& a, const DiscreteCurrent& b,
                    const KernelParams& params);

/// Limit of d(l_u, l_v)^2 / T^2 for two lines l_u(t) = x_u + u t and
/// l_v(t) = x_v + v t, t in (0, T], as T / |x_u - x_v| -> 0:
///   d0 - 2 k(x_u, x_v) d1,  d0 = u.u + v.v,  d1 = |u.v|.
/// With the step kernel this is the three-case p -> infinity limit.
double short_line_limit(const Point3& x_u, const Point3& x_v, const Vec3& u,
                        const Vec3& v, const KernelParams& params);

}  // namespace fiberk

#endif  // FIBERK_CURRENTS_HPP_
