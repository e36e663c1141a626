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

// Configuration error on SO(3) x SO(3): the attitude error function psi,
// the attitude error vector e_R, the angular velocity error e_omega and the
// Jacobian E with de_R/dt = E e_omega.

#include <cmath>

#include "quadflip/so3.hpp"

namespace quadflip {

/// Radicand 1 + tr(R_dᵀR) below which e_R is declared singular.
inline constexpr double kAntipodalEps = 1e-9;

struct AttitudePair {
  Mat3 R;
  Mat3 R_d;
};

struct ErrorState {
  double psi = 0.0;
  Vec3 e_R = Vec3::Zero();
  Vec3 e_omega = Vec3::Zero();
};

namespace detail {
/// sqrt(1 + tr q). Past a third of a turn the trace form cancels, so the
/// value is taken from |vee(q - qᵀ)| / sqrt(3 - tr q) instead.
inline double root_radicand(const Mat3& q) {
  const double tr = q.trace();
  if (tr >= 0.0) return std::sqrt(1.0 + tr);
  return vee_unchecked(q - q.transpose()).norm() / std::sqrt(3.0 - tr);
}
}  // namespace detail

/// 1 + tr(R_dᵀR), non-negative.
inline double antipodal_radicand(const AttitudePair& p) {
  const double r = detail::root_radicand(p.R_d.transpose() * p.R);
  return r * r;
}

inline bool admissible(const AttitudePair& p) { return antipodal_radicand(p) > kAntipodalEps; }

inline double psi(const AttitudePair& p) { return 2.0 - detail::root_radicand(p.R_d.transpose() * p.R); }

namespace detail {
inline double checked_radicand(const AttitudePair& p) {
  const double rad = antipodal_radicand(p);
  if (rad <= kAntipodalEps) {
    throw Error(ErrorCode::AntipodalSingularity,
                "1 + tr(R_d^T R) = " + std::to_string(rad) + " at or below threshold");
  }
  return rad;
}
}  // namespace detail

inline Vec3 attitude_error_vector(const AttitudePair& p) {
  const double rad = detail::checked_radicand(p);
  const Mat3 q = p.R_d.transpose() * p.R;
  return vee_unchecked(q - q.transpose()) / (2.0 * std::sqrt(rad));
}

/// e_omega = omega - Rᵀ R_d omega_d (body frame).
inline Vec3 angular_velocity_error(const Mat3& R, const Vec3& omega, const Mat3& R_d,
                                   const Vec3& omega_d) {
  return omega - R.transpose() * R_d * omega_d;
}

inline Mat3 error_jacobian(const AttitudePair& p) {
  const double rad = detail::checked_radicand(p);
  const Mat3 q = p.R.transpose() * p.R_d;
  const Vec3 er = attitude_error_vector(p);
  return (q.trace() * Mat3::Identity() - q + 2.0 * er * er.transpose()) / (2.0 * std::sqrt(rad));
}

inline ErrorState attitude_errors(const Mat3& R, const Vec3& omega, const Mat3& R_d,
                                  const Vec3& omega_d) {
  const AttitudePair p{R, R_d};
  return {psi(p), attitude_error_vector(p), angular_velocity_error(R, omega, R_d, omega_d)};
}

}  // namespace quadflip
