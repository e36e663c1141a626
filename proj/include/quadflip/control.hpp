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

// Bounded attitude tracking controller, collective thrust for position
// tracking, the computed attitude that slaves attitude to position, and the
// gain certificate for the attitude loop.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "quadflip/attitude_error.hpp"
#include "quadflip/plant.hpp"

namespace quadflip {

using Mat2 = Eigen::Matrix2d;

struct GainSet {
  Vec3 k_R = Vec3(65.16, 70.56, 98.28);      // diagonal
  Vec3 k_omega = Vec3(2.172, 2.352, 3.276);  // diagonal
  double k_x = 453.6205;
  double k_v = 48.6521;

  void validate() const {
    if (!(k_R.minCoeff() > 0.0) || !(k_omega.minCoeff() > 0.0) || !(k_x > 0.0) || !(k_v > 0.0) ||
        !k_R.allFinite() || !k_omega.allFinite()) {
      throw Error(ErrorCode::InvalidGains, "all gains must be strictly positive");
    }
  }

  /// Scalar gains k_R = lambda_min(K_R) I, k_omega = lambda_min(K_omega) I.
  GainSet scalar_reduction() const {
    GainSet g = *this;
    g.k_R = Vec3::Constant(k_R.minCoeff());
    g.k_omega = Vec3::Constant(k_omega.minCoeff());
    return g;
  }

  friend bool operator==(const GainSet&, const GainSet&) = default;
};

struct AttitudeReference {
  Mat3 R_d = Mat3::Identity();
  Vec3 omega_d = Vec3::Zero();      // rad/s, body frame of R_d
  Vec3 omega_d_dot = Vec3::Zero();  // rad/s^2
};

struct PositionReference {
  Vec3 x_d = Vec3::Zero();
  Vec3 x_d_dot = Vec3::Zero();
  Vec3 x_d_ddot = Vec3::Zero();
  Vec3 e1_d = Vec3::UnitX();
};

inline Vec3 position_error(const BodyState& s, const PositionReference& r) { return s.x - r.x_d; }
inline Vec3 velocity_error(const BodyState& s, const PositionReference& r) { return s.v - r.x_d_dot; }

/// Body moment of the bounded tracking controller. The damping term is
/// normalised by sqrt(1 + |e_omega|^2), so its magnitude never exceeds
/// lambda_max(K_omega).
inline Vec3 attitude_control_moment(const BodyState& s, const AttitudeReference& ref, const GainSet& g,
                                    const QuadParams& p) {
  const Vec3 e_R = attitude_error_vector({s.R, ref.R_d});
  const Mat3 transport = s.R.transpose() * ref.R_d;
  const Vec3 w = transport * ref.omega_d;
  const Vec3 e_omega = s.omega - w;
  const Vec3 damping = e_omega / std::sqrt(1.0 + e_omega.squaredNorm());
  return -g.k_R.cwiseProduct(e_R) - g.k_omega.cwiseProduct(damping) +
         p.inertia * transport * ref.omega_d_dot + w.cross(p.inertia * w);
}

/// m g E3 - k_v e_v - k_x e_x + m xdd_d, the desired force in the inertial frame.
inline Vec3 desired_force(const BodyState& s, const PositionReference& r, const GainSet& g,
                          const QuadParams& p) {
  return p.weight() * e3() - g.k_v * velocity_error(s, r) - g.k_x * position_error(s, r) +
         p.mass * r.x_d_ddot;
}

inline double collective_thrust(const BodyState& s, const PositionReference& r, const GainSet& g,
                                const QuadParams& p) {
  return desired_force(s, r, g, p).dot(s.R * e3());
}

/// R_x = [b1 b2 b3] with b3 along the desired force and b1 as close to e1_d
/// as the constraint b1 ⊥ b3 allows.
inline Mat3 computed_rotation(const Vec3& force, const Vec3& e1_d) {
  const double fn = force.norm();
  if (!(fn > 1e-9)) {
    throw Error(ErrorCode::DegenerateThrust, "desired force vanishes");
  }
  const Vec3 b3 = force / fn;
  const Vec3 c = b3.cross(e1_d);
  const double cn = c.norm();
  if (!(cn > 1e-9)) {
    throw Error(ErrorCode::GimbalDegenerate, "heading direction is parallel to thrust axis");
  }
  const Vec3 b2 = c / cn;
  Mat3 r;
  r.col(0) = b2.cross(b3);
  r.col(1) = b2;
  r.col(2) = b3;
  return r;
}

inline Mat3 computed_attitude(const PositionReference& r, const BodyState& s, const GainSet& g,
                              const QuadParams& p) {
  return computed_rotation(desired_force(s, r, g, p), r.e1_d);
}

/// Turns the per-step samples of the computed attitude into a full attitude
/// reference. The body rate between consecutive samples is the central
/// difference log(R_{k-1}ᵀ R_k)/dt, which sits at t_{k-1/2}; omega_d at t_k
/// extrapolates the last two midpoint rates and omega_d_dot is their
/// difference quotient. The first two samples fall back to one-sided values.
class ComputedAttitudeTracker {
 public:
  explicit ComputedAttitudeTracker(double dt) : dt_(dt) {}

  AttitudeReference update(const Mat3& R_x) {
    AttitudeReference ref;
    ref.R_d = R_x;
    if (samples_ >= 1) {
      const Vec3 rate = rot_log(prev_.transpose() * R_x) / dt_;
      if (samples_ >= 2) {
        ref.omega_d = rate + 0.5 * (rate - prev_rate_);
        ref.omega_d_dot = (rate - prev_rate_) / dt_;
      } else {
        ref.omega_d = rate;
      }
      prev_rate_ = rate;
    }
    prev_ = R_x;
    ++samples_;
    return ref;
  }

  void reset() { samples_ = 0; }

 private:
  double dt_;
  int samples_ = 0;
  Mat3 prev_ = Mat3::Identity();
  Vec3 prev_rate_ = Vec3::Zero();
};

/// Gain certificate for the attitude loop. Matrix gains enter through
/// lambda_min, which under-approximates the quadratic forms.
struct StabilityCertificate {
  double k_R = 0.0;
  double k_omega = 0.0;
  double lambda_min_J = 0.0;
  double lambda_max_J = 0.0;
  double inertia_skew_norm = 0.0;  // ||2J - tr(J) I||
  double omega_d_max = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double c2_sup = 0.0;
  double c2 = 0.0;
  Mat2 W2 = Mat2::Zero();
  Mat2 Pi1 = Mat2::Zero();
  Mat2 Pi2 = Mat2::Zero();
  double lambda_min_W2 = 0.0;
  double lambda_min_Pi1 = 0.0;
  double lambda_max_Pi2 = 0.0;
  double tau = 0.0;
  bool valid = false;
  std::vector<std::string> reasons;

  const StabilityCertificate& require_valid() const {
    if (!valid) {
      std::string msg;
      for (const auto& r : reasons) msg += (msg.empty() ? "" : "; ") + r;
      throw Error(ErrorCode::InvalidGains, msg);
    }
    return *this;
  }
};

/// c2 suprema below this are treated as "no positive c2".
inline constexpr double kMinC2 = 1e-3;
/// Fraction of the c2 supremum used to instantiate the certificate.
inline constexpr double kC2Fraction = 0.9;

inline double inertia_skew_norm(const Mat3& J) {
  const Mat3 m = 2.0 * J - J.trace() * Mat3::Identity();
  return Eigen::SelfAdjointEigenSolver<Mat3>(m).eigenvalues().cwiseAbs().maxCoeff();
}

inline StabilityCertificate certify_gains(const GainSet& g, const QuadParams& p, double omega_d_max) {
  StabilityCertificate c;
  c.k_R = g.k_R.minCoeff();
  c.k_omega = g.k_omega.minCoeff();
  c.lambda_min_J = lambda_min(p.inertia);
  c.lambda_max_J = lambda_max(p.inertia);
  c.inertia_skew_norm = inertia_skew_norm(p.inertia);
  c.omega_d_max = omega_d_max;
  if (!(c.k_R > 0.0) || !(c.k_omega > 0.0)) {
    c.reasons.emplace_back("gains must be strictly positive");
    return c;
  }
  if (!(omega_d_max >= 0.0)) {
    c.reasons.emplace_back("omega_d_max must be non-negative");
    return c;
  }
  const double kR = c.k_R;
  const double kw = c.k_omega;
  const double jmin = c.lambda_min_J;
  const double jmax = c.lambda_max_J;
  c.B1 = 1.0 / std::sqrt(1.0 + 4.0 * kR / jmin);
  c.B2 = c.inertia_skew_norm * omega_d_max;
  const double kb = kw + c.B2;
  c.c2_sup = std::min({std::sqrt(2.0 * kR * jmin), 2.0 * kw * c.B1 / (3.0 * jmax),
                       4.0 * kR * kw * c.B1 / (6.0 * kR * jmax + kb * kb)});
  if (!(c.c2_sup > kMinC2)) {
    c.reasons.emplace_back("no positive c2 satisfies the gain condition (supremum " +
                           std::to_string(c.c2_sup) + ")");
    return c;
  }
  const double c2 = kC2Fraction * c.c2_sup;
  c.c2 = c2;
  c.W2 << kR * c2, -0.5 * c2 * kb,
          -0.5 * c2 * kb, kw * c.B1 - 1.5 * c2 * jmax;
  c.Pi1 << kR, 0.5 * c2,
           0.5 * c2, 0.5 * jmin;
  c.Pi2 << 2.0 * kR, 0.5 * c2,
           0.5 * c2, 0.5 * jmax;
  c.lambda_min_W2 = Eigen::SelfAdjointEigenSolver<Mat2>(c.W2).eigenvalues().minCoeff();
  c.lambda_min_Pi1 = Eigen::SelfAdjointEigenSolver<Mat2>(c.Pi1).eigenvalues().minCoeff();
  c.lambda_max_Pi2 = Eigen::SelfAdjointEigenSolver<Mat2>(c.Pi2).eigenvalues().maxCoeff();
  const double lambda_min_Pi2 = Eigen::SelfAdjointEigenSolver<Mat2>(c.Pi2).eigenvalues().minCoeff();
  if (!(c.lambda_min_W2 > 0.0)) c.reasons.emplace_back("W2 is not positive definite");
  if (!(c.lambda_min_Pi1 > 0.0)) c.reasons.emplace_back("Pi1 is not positive definite");
  if (!(lambda_min_Pi2 > 0.0)) c.reasons.emplace_back("Pi2 is not positive definite");
  c.tau = c.lambda_min_W2 / c.lambda_max_Pi2;
  c.valid = c.reasons.empty() && c.tau > 0.0;
  return c;
}

/// psi_a = V_psi(0) / k_R and the position-loop constant
/// alpha = sqrt(psi_a (1 - psi_a / 4)). Reported only.
inline double position_loop_alpha(double psi_a) {
  return std::sqrt(std::max(0.0, psi_a * (1.0 - psi_a / 4.0)));
}

/// V_psi = 1/2 e_omegaᵀ J e_omega + k_R psi with scalar k_R.
inline double attitude_lyapunov(const ErrorState& e, double k_R, const QuadParams& p) {
  return 0.5 * e.e_omega.dot(p.inertia * e.e_omega) + k_R * e.psi;
}

struct RegionCheck {
  bool inside = false;
  double psi = 0.0;
  double psi_margin = 0.0;       // 2 - psi
  double e_omega_sq = 0.0;
  double e_omega_sq_bound = 0.0;  // 2 k_R / lambda_max(J) (2 - psi)
  double e_omega_margin = 0.0;   // bound - |e_omega|^2
};

inline RegionCheck check_region_of_attraction(const BodyState& s, const AttitudeReference& ref,
                                              const GainSet& g, const QuadParams& p) {
  RegionCheck c;
  c.psi = psi({s.R, ref.R_d});
  c.psi_margin = 2.0 - c.psi;
  c.e_omega_sq = angular_velocity_error(s.R, s.omega, ref.R_d, ref.omega_d).squaredNorm();
  c.e_omega_sq_bound = 2.0 * g.k_R.minCoeff() / lambda_max(p.inertia) * (2.0 - c.psi);
  c.e_omega_margin = c.e_omega_sq_bound - c.e_omega_sq;
  c.inside = admissible({s.R, ref.R_d}) && c.psi < 2.0 && c.e_omega_sq < c.e_omega_sq_bound;
  return c;
}

}  // namespace quadflip
