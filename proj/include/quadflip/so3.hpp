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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadflip/errors.hpp"

namespace quadflip {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;

/// Tolerance on RᵀR = I and det R = 1 for a matrix to count as a rotation.
inline constexpr double kRotationTol = 1e-9;
inline constexpr double kSkewTol = 1e-9;
inline constexpr double kUnitTol = 1e-9;
/// Maximum Frobenius distance from SO(3) accepted by reorthonormalize().
inline constexpr double kReorthoMaxDistance = 1e-3;

inline Vec3 e1() { return Vec3::UnitX(); }
inline Vec3 e2() { return Vec3::UnitY(); }
inline Vec3 e3() { return Vec3::UnitZ(); }

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Cross-product matrix: hat(v) * w == v.cross(w).
inline Mat3 hat(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

/// Inverse of hat(). Rejects matrices whose symmetric part exceeds kSkewTol.
inline Vec3 vee(const Mat3& m) {
  const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSkewTol) {
    throw Error(ErrorCode::NotSkew, "symmetric part " + std::to_string(asym) + " exceeds tolerance");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

/// vee() of the skew part, without the skew check. Used where the argument
/// is skew by construction up to rounding (e.g. M - Mᵀ).
inline Vec3 vee_unchecked(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

inline double orthogonality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

inline bool is_rotation(const Mat3& r, double tol = kRotationTol) {
  return r.allFinite() && orthogonality_error(r) <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

/// Rodrigues form of exp(angle * hat(axis)).
inline Mat3 rot_exp(const Vec3& axis, double angle) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::NonUnitAxis, "rotation axis must have unit norm");
  }
  const Mat3 k = hat(axis);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

/// Rotation vector of R (angle * axis), valid for angles in [0, pi).
inline Vec3 rot_log(const Mat3& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double angle = std::acos(c);
  const Vec3 s = vee_unchecked(r);  // sin(angle) * axis
  if (angle < 1e-6) {
    return (1.0 + angle * angle / 6.0) * s;
  }
  return (angle / std::sin(angle)) * s;
}

/// Closest rotation in Frobenius norm (polar factor via SVD).
inline Mat3 reorthonormalize(const Mat3& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::TooFarFromSO3, "matrix has non-finite entries");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) {
    throw Error(ErrorCode::TooFarFromSO3, "matrix is near an improper rotation");
  }
  const Mat3 r = u * v.transpose();
  const double dist = (m - r).norm();
  if (dist > kReorthoMaxDistance) {
    throw Error(ErrorCode::TooFarFromSO3,
                "Frobenius distance " + std::to_string(dist) + " from SO(3)");
  }
  return r;
}

}  // namespace quadflip
