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

// Rigid-body quadrotor plant: mixing matrix, plant-side actuator saturation,
// equations of motion and a fixed-step RK4 integrator with zero-order-hold
// thrusts.

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "quadflip/so3.hpp"

namespace quadflip {

struct QuadParams {
  double mass = 1.225;                                   // kg
  Mat3 inertia = Vec3(0.0181, 0.0196, 0.0273).asDiagonal();  // kg m^2
  double arm_length = 0.23;                              // m
  double torque_coeff = 0.0121;                          // m
  double gravity = 9.81;                                 // m/s^2

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive");
      }
    };
    positive(mass, "mass");
    positive(arm_length, "arm_length");
    positive(torque_coeff, "torque_coeff");
    positive(gravity, "gravity");
    if (!inertia.allFinite() || (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "inertia must be symmetric");
    }
    if (Eigen::SelfAdjointEigenSolver<Mat3>(inertia).eigenvalues().minCoeff() <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "inertia must be positive definite");
    }
  }

  double weight() const { return mass * gravity; }
  double hover_thrust_per_rotor() const { return weight() / 4.0; }

  friend bool operator==(const QuadParams&, const QuadParams&) = default;
};

inline double lambda_min(const Mat3& sym) {
  return Eigen::SelfAdjointEigenSolver<Mat3>(sym).eigenvalues().minCoeff();
}
inline double lambda_max(const Mat3& sym) {
  return Eigen::SelfAdjointEigenSolver<Mat3>(sym).eigenvalues().maxCoeff();
}

struct BodyState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 omega = Vec3::Zero();  // body frame

  bool finite() const { return x.allFinite() && v.allFinite() && R.allFinite() && omega.allFinite(); }

  friend bool operator==(const BodyState&, const BodyState&) = default;
};

struct StateDerivative {
  Vec3 x_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
  Mat3 R_dot = Mat3::Zero();
  Vec3 omega_dot = Vec3::Zero();
};

/// Per-rotor thrusts, N.
using ThrustVector = Vec4;

struct ThrustLimits {
  double f_min = 0.0;
  double f_idle = 1.225 * 9.81 / 4.0;
  double f_max = 6.9939;

  void validate() const {
    if (!(0.0 <= f_min && f_min < f_idle && f_idle < f_max) || !std::isfinite(f_max)) {
      throw Error(ErrorCode::InvalidArgument, "thrust limits must satisfy 0 <= f_min < f_idle < f_max");
    }
  }

  friend bool operator==(const ThrustLimits&, const ThrustLimits&) = default;
};

/// Collective thrust f and body moment u.
struct Wrench {
  double f = 0.0;
  Vec3 u = Vec3::Zero();
};

/// [f; u] = B F.
inline Mat4 mixing_matrix(const QuadParams& p) {
  const double d = p.arm_length;
  const double b = p.torque_coeff;
  Mat4 m;
  m << 1.0, 1.0, 1.0, 1.0,
       0.0, d, 0.0, -d,
       -d, 0.0, d, 0.0,
       -b, b, -b, b;
  return m;
}

/// Closed-form inverse of mixing_matrix().
inline Mat4 mixing_matrix_inverse(const QuadParams& p) {
  const double h = 1.0 / (2.0 * p.arm_length);
  const double q = 1.0 / (4.0 * p.torque_coeff);
  Mat4 m;
  m << 0.25, 0.0, -h, -q,
       0.25, h, 0.0, q,
       0.25, 0.0, h, -q,
       0.25, -h, 0.0, q;
  return m;
}

inline ThrustVector wrench_to_thrusts(double f, const Vec3& u, const QuadParams& p) {
  return mixing_matrix_inverse(p) * Vec4(f, u.x(), u.y(), u.z());
}

inline Wrench thrusts_to_wrench(const ThrustVector& F, const QuadParams& p) {
  const Vec4 w = mixing_matrix(p) * F;
  return {w(0), w.tail<3>()};
}

struct SaturationResult {
  ThrustVector applied = ThrustVector::Zero();
  std::array<bool, 4> flags{};

  bool any() const { return flags[0] || flags[1] || flags[2] || flags[3]; }
};

inline SaturationResult saturate(const ThrustVector& F, const ThrustLimits& lim) {
  SaturationResult r;
  for (int i = 0; i < 4; ++i) {
    const double c = std::clamp(F(i), lim.f_min, lim.f_max);
    r.flags[static_cast<std::size_t>(i)] = (c != F(i));
    r.applied(i) = c;
  }
  return r;
}

/// Equations of motion; F is taken as the applied (already saturated) thrust.
inline StateDerivative derivatives(const BodyState& s, const ThrustVector& F, const QuadParams& p) {
  const Wrench w = thrusts_to_wrench(F, p);
  StateDerivative d;
  d.x_dot = s.v;
  d.v_dot = -p.gravity * e3() + (w.f / p.mass) * (s.R * e3());
  d.omega_dot = p.inertia.ldlt().solve(w.u - s.omega.cross(p.inertia * s.omega));
  d.R_dot = s.R * hat(s.omega);
  return d;
}

namespace detail {
inline BodyState advance(const BodyState& s, const StateDerivative& d, double h) {
  return {s.x + h * d.x_dot, s.v + h * d.v_dot, s.R + h * d.R_dot, s.omega + h * d.omega_dot};
}
}  // namespace detail

/// Classical RK4 step with the thrust re-evaluated at every stage, F = law(s).
/// R is projected back onto SO(3) afterwards.
template <class ThrustLaw>
BodyState rk4_step_feedback(const BodyState& s, ThrustLaw&& law, const QuadParams& p, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  const StateDerivative k1 = derivatives(s, law(s), p);
  const BodyState s2 = detail::advance(s, k1, 0.5 * dt);
  const StateDerivative k2 = derivatives(s2, law(s2), p);
  const BodyState s3 = detail::advance(s, k2, 0.5 * dt);
  const StateDerivative k3 = derivatives(s3, law(s3), p);
  const BodyState s4 = detail::advance(s, k3, dt);
  const StateDerivative k4 = derivatives(s4, law(s4), p);
  const double w = dt / 6.0;
  BodyState n;
  n.x = s.x + w * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
  n.v = s.v + w * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
  n.R = s.R + w * (k1.R_dot + 2.0 * k2.R_dot + 2.0 * k3.R_dot + k4.R_dot);
  n.omega = s.omega + w * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
  if (!n.finite()) {
    throw Error(ErrorCode::NonFiniteState, "integration produced a non-finite state");
  }
  n.R = reorthonormalize(n.R);
  return n;
}

/// RK4 step with F held constant over the step.
inline BodyState rk4_step(const BodyState& s, const ThrustVector& F, const QuadParams& p, double dt) {
  return rk4_step_feedback(s, [&F](const BodyState&) { return F; }, p, dt);
}

}  // namespace quadflip
