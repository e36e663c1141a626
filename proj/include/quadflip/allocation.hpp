// Copyright 2026 The quadflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Null-space thrust allocation for Attitude Mode.
//
//   F = A# u + (I - A# A) xi
//   xi = accumulator + B^-1 [f_p; 0; 0; 0]
//
// A# is the closed-form pseudoinverse of the torque rows of the mixing
// matrix, the accumulator integrates the descent direction of the barrier
// H(F) = sum h(f_i), and f_p is an axis-weighted collective thrust that pulls
// the vehicle towards a held position.

#include <cmath>
#include <string>

#include "quadflip/control.hpp"
#include "quadflip/plant.hpp"

namespace quadflip {

using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat43 = Eigen::Matrix<double, 4, 3>;

struct AllocationMatrices {
  Mat34 A = Mat34::Zero();
  Mat43 A_pinv = Mat43::Zero();
  Mat4 N = Mat4::Zero();
  Mat4 B = Mat4::Zero();
  Mat4 B_inv = Mat4::Zero();
};

/// A is rows 2-4 of B. AAᵀ = diag(2d², 2d², 4b²), so A# = Aᵀ(AAᵀ)^-1 has
/// the closed form below and coincides with columns 2-4 of B^-1.
inline AllocationMatrices build_allocation(const QuadParams& p) {
  AllocationMatrices m;
  m.B = mixing_matrix(p);
  m.B_inv = mixing_matrix_inverse(p);
  m.A = m.B.bottomRows<3>();
  const double d = p.arm_length;
  const double b = p.torque_coeff;
  const Eigen::DiagonalMatrix<double, 3> gram_inv(1.0 / (2.0 * d * d), 1.0 / (2.0 * d * d),
                                                  1.0 / (4.0 * b * b));
  m.A_pinv = m.A.transpose() * gram_inv;
  m.N = Mat4::Identity() - m.A_pinv * m.A;
  return m;
}

enum class GradientSign { Descent, Ascent };

struct BarrierConfig {
  ThrustLimits limits;
  double k_h1 = 2.0;
  double k_h2 = 3.0;
  /// Per-component bound on the accumulator, N.
  double accumulator_clamp = 50.0;
  /// Lower barrier bound used when limits.f_min is 0.
  double zero_floor = 0.05;
  GradientSign sign = GradientSign::Descent;

  double lower() const { return limits.f_min > 0.0 ? limits.f_min : zero_floor; }

  void validate() const {
    limits.validate();
    if (!(k_h1 > 0.0) || !(k_h2 > 0.0) || !(accumulator_clamp > 0.0) || !(zero_floor > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "barrier gains and clamp must be positive");
    }
    if (!(lower() < limits.f_idle)) {
      throw Error(ErrorCode::InvalidArgument, "barrier lower bound must be below idle thrust");
    }
  }

  friend bool operator==(const BarrierConfig&, const BarrierConfig&) = default;
};

inline bool in_barrier_domain(double f, const BarrierConfig& cfg) {
  const double a = std::abs(f);
  return a > cfg.lower() && a < cfg.limits.f_max;
}

namespace detail {
inline void check_domain(double f, const BarrierConfig& cfg) {
  if (!in_barrier_domain(f, cfg)) {
    throw Error(ErrorCode::OutOfBarrierDomain,
                "|f| = " + std::to_string(std::abs(f)) + " outside (" + std::to_string(cfg.lower()) +
                    ", " + std::to_string(cfg.limits.f_max) + ")");
  }
}
inline double lower_angle(double a, const BarrierConfig& cfg) {
  return kPi * (a - cfg.limits.f_idle) / (2.0 * (cfg.limits.f_idle - cfg.lower()));
}
}  // namespace detail

/// h(f): tan² below idle, quadratic plus a rational term above idle. The
/// rational term uses (f_max - |f|) so that h diverges at both limits.
inline double barrier_value(double f, const BarrierConfig& cfg) {
  detail::check_domain(f, cfg);
  const double a = std::abs(f);
  const double idle = cfg.limits.f_idle;
  if (a <= idle) {
    const double t = std::tan(detail::lower_angle(a, cfg));
    return cfg.k_h1 * t * t;
  }
  const double r = a - idle;
  return 0.5 * cfg.k_h2 * r * r + r * r / (cfg.limits.f_max - a);
}

/// dh/df in closed form.
inline double barrier_derivative(double f, const BarrierConfig& cfg) {
  detail::check_domain(f, cfg);
  const double a = std::abs(f);
  const double sgn = f < 0.0 ? -1.0 : 1.0;
  const double idle = cfg.limits.f_idle;
  double dh_da = 0.0;
  if (a <= idle) {
    const double th = detail::lower_angle(a, cfg);
    const double t = std::tan(th);
    const double sec2 = 1.0 + t * t;
    dh_da = 2.0 * cfg.k_h1 * t * sec2 * kPi / (2.0 * (idle - cfg.lower()));
  } else {
    const double r = a - idle;
    const double s = cfg.limits.f_max - a;
    dh_da = cfg.k_h2 * r + (2.0 * r * s + r * r) / (s * s);
  }
  return sgn * dh_da;
}

inline double barrier_total(const ThrustVector& F, const BarrierConfig& cfg) {
  double h = 0.0;
  for (int i = 0; i < 4; ++i) h += barrier_value(F(i), cfg);
  return h;
}

inline Vec4 barrier_gradient(const ThrustVector& F, const BarrierConfig& cfg) {
  Vec4 g;
  for (int i = 0; i < 4; ++i) g(i) = barrier_derivative(F(i), cfg);
  return g;
}

struct RecoveryConfig {
  Vec3 iota = Vec3(1.5, 1.0, 1.25);
  double k_xi = 0.05;
  bool enabled = true;

  friend bool operator==(const RecoveryConfig&, const RecoveryConfig&) = default;
};

/// f_p = (diag(iota) (m g E3 + k_xi(-k_v e_v - k_x e_x) + m xdd_d))ᵀ R e3.
inline double position_recovery_thrust(const BodyState& s, const PositionReference& r,
                                       const RecoveryConfig& rc, const GainSet& g, const QuadParams& p) {
  const Vec3 feedback = -g.k_v * velocity_error(s, r) - g.k_x * position_error(s, r);
  const Vec3 force = p.weight() * e3() + rc.k_xi * feedback + p.mass * r.x_d_ddot;
  return rc.iota.cwiseProduct(force).dot(s.R * e3());
}

/// Running integral of the barrier gradient over one Attitude Mode episode.
struct XiState {
  Vec4 accumulator = Vec4::Zero();
};

struct XiUpdate {
  XiState state;
  Vec4 xi = Vec4::Zero();
  Vec4 gradient = Vec4::Zero();  // zero for skipped components
  int domain_skips = 0;
  bool clamped = false;
};

/// One accumulator step using the gradient at the previous commanded thrust.
/// Components outside the barrier domain contribute nothing for this step.
inline XiUpdate update_xi(const XiState& xi, const ThrustVector& F_prev, double f_p, const Mat4& B_inv,
                          double dt, const BarrierConfig& cfg) {
  XiUpdate out;
  for (int i = 0; i < 4; ++i) {
    if (in_barrier_domain(F_prev(i), cfg)) {
      out.gradient(i) = barrier_derivative(F_prev(i), cfg);
    } else {
      ++out.domain_skips;
    }
  }
  const double dir = cfg.sign == GradientSign::Descent ? -1.0 : 1.0;
  const Vec4 raw = xi.accumulator + dir * dt * out.gradient;
  const Vec4 clamped = raw.cwiseMax(-cfg.accumulator_clamp).cwiseMin(cfg.accumulator_clamp);
  out.clamped = (clamped != raw);
  out.state.accumulator = clamped;
  out.xi = clamped + B_inv.col(0) * f_p;
  return out;
}

inline ThrustVector allocate_attitude_mode(const Vec3& u, const Vec4& xi, const AllocationMatrices& m) {
  return m.A_pinv * u + m.N * xi;
}

inline ThrustVector allocate_position_mode(double f, const Vec3& u, const QuadParams& p) {
  return wrench_to_thrusts(f, u, p);
}

}  // namespace quadflip
