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

// Smooth eighth-degree polynomial (SP8) references: rest-to-rest position
// segments and the full-turn flip attitude profile.

#include <array>
#include <cmath>
#include <vector>

#include "quadflip/control.hpp"

namespace quadflip {

/// Value and first three derivatives at one end of a segment.
using BoundaryJet = std::array<double, 4>;

/// p(t) = sum_i c_i s^i with s = (t - t0) / (t1 - t0).
class SmoothPoly8 {
 public:
  SmoothPoly8() = default;
  SmoothPoly8(double t0, double t1, const Eigen::Matrix<double, 9, 1>& coeffs)
      : t0_(t0), t1_(t1), c_(coeffs) {}

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const Eigen::Matrix<double, 9, 1>& coefficients() const { return c_; }

  /// Derivative of the given order at t. Not restricted to the window.
  double eval(double t, int order = 0) const {
    const double span = t1_ - t0_;
    const double s = (t - t0_) / span;
    double acc = 0.0;
    for (int i = 8; i >= order; --i) {
      double falling = 1.0;
      for (int j = 0; j < order; ++j) falling *= static_cast<double>(i - j);
      acc = acc * s + falling * c_(i);
    }
    return acc / std::pow(span, order);
  }

 private:
  double t0_ = 0.0;
  double t1_ = 1.0;
  Eigen::Matrix<double, 9, 1> c_ = Eigen::Matrix<double, 9, 1>::Zero();
};

inline constexpr double kMaxFitCondition = 1e12;

/// Matches orders 0-3 at both ends; the ninth condition is p''''(t0) = 0.
inline SmoothPoly8 fit_poly8(double t0, double t1, const BoundaryJet& start, const BoundaryJet& end) {
  const double span = t1 - t0;
  if (!(span > 1e-9) || !std::isfinite(span)) {
    throw Error(ErrorCode::SingularFit, "segment window must have positive length");
  }
  Eigen::Matrix<double, 9, 9> m = Eigen::Matrix<double, 9, 9>::Zero();
  Eigen::Matrix<double, 9, 1> rhs;
  auto row = [&](int r, double s, int order) {
    for (int i = order; i < 9; ++i) {
      double falling = 1.0;
      for (int j = 0; j < order; ++j) falling *= static_cast<double>(i - j);
      m(r, i) = falling * std::pow(s, i - order);
    }
  };
  for (int k = 0; k < 4; ++k) {
    row(k, 0.0, k);
    rhs(k) = start[static_cast<std::size_t>(k)] * std::pow(span, k);
    row(4 + k, 1.0, k);
    rhs(4 + k) = end[static_cast<std::size_t>(k)] * std::pow(span, k);
  }
  row(8, 0.0, 4);
  rhs(8) = 0.0;
  const Eigen::FullPivLU<Eigen::Matrix<double, 9, 9>> lu(m);
  if (!lu.isInvertible() || !(lu.rcond() * kMaxFitCondition > 1.0)) {
    throw Error(ErrorCode::SingularFit, "boundary-condition system is numerically singular");
  }
  return SmoothPoly8(t0, t1, lu.solve(rhs));
}

inline SmoothPoly8 rest_to_rest(double t0, double t1, double from, double to) {
  return fit_poly8(t0, t1, {from, 0.0, 0.0, 0.0}, {to, 0.0, 0.0, 0.0});
}

/// Largest |p'(t)| on the window, by dense sampling.
inline double peak_rate(const SmoothPoly8& p, int samples = 20001) {
  double peak = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = p.t0() + (p.t1() - p.t0()) * k / (samples - 1);
    peak = std::max(peak, std::abs(p.eval(t, 1)));
  }
  return peak;
}

struct FlipSpec {
  Vec3 axis = Vec3::UnitY();  // body axis
  double total_angle = 2.0 * kPi;
  double start = 6.0;
  double duration = 1.0;
  Mat3 base_attitude = Mat3::Identity();

  friend bool operator==(const FlipSpec&, const FlipSpec&) = default;
};

/// Attitude reference for a rotation about a fixed body axis whose angle
/// follows a rest-to-rest SP8 profile.
class FlipTrajectory {
 public:
  explicit FlipTrajectory(const FlipSpec& spec) : spec_(spec) {
    if (!(spec.duration > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "flip duration must be positive");
    }
    if (std::abs(spec.axis.norm() - 1.0) > kUnitTol) {
      throw Error(ErrorCode::NonUnitAxis, "flip axis must have unit norm");
    }
    angle_ = rest_to_rest(spec.start, spec.start + spec.duration, 0.0, spec.total_angle);
  }

  const FlipSpec& spec() const { return spec_; }
  const SmoothPoly8& angle_profile() const { return angle_; }
  double peak_rate() const { return quadflip::peak_rate(angle_); }

  /// Rejects profiles whose |omega_d| exceeds the declared bound.
  void check_rate_bound(double omega_d_max) const {
    if (peak_rate() > omega_d_max) {
      throw Error(ErrorCode::InvalidArgument,
                  "flip peak rate " + std::to_string(peak_rate()) + " rad/s exceeds omega_d_max " +
                      std::to_string(omega_d_max));
    }
  }

  AttitudeReference operator()(double t) const {
    const double end = spec_.start + spec_.duration;
    if (t < spec_.start - 1e-12 || t > end + 1e-12) {
      throw Error(ErrorCode::OutOfWindow, "t = " + std::to_string(t) + " outside flip window");
    }
    AttitudeReference r;
    r.R_d = spec_.base_attitude * rot_exp(spec_.axis, angle_.eval(t, 0));
    r.omega_d = angle_.eval(t, 1) * spec_.axis;
    r.omega_d_dot = angle_.eval(t, 2) * spec_.axis;
    return r;
  }

 private:
  FlipSpec spec_;
  SmoothPoly8 angle_;
};

inline AttitudeReference flip_reference(const FlipSpec& spec, double t) { return FlipTrajectory(spec)(t); }

struct Waypoint {
  double t = 0.0;
  Vec3 x = Vec3::Zero();

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Initial velocity, acceleration and jerk of the first segment.
struct HandOff {
  Vec3 v = Vec3::Zero();
  Vec3 a = Vec3::Zero();
  Vec3 j = Vec3::Zero();
};

/// Per-axis SP8 segments between consecutive waypoints. Holds the first
/// waypoint before the first segment and the last one after the final
/// segment. Interior waypoints are rest points; the first one may carry a
/// hand-off jet.
class PositionTrajectory {
 public:
  PositionTrajectory(std::vector<Waypoint> waypoints, const Vec3& heading, const HandOff& handoff = {})
      : waypoints_(std::move(waypoints)), heading_(heading) {
    if (waypoints_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "position trajectory needs at least one waypoint");
    }
    if (std::abs(heading_.norm() - 1.0) > kUnitTol) {
      throw Error(ErrorCode::InvalidArgument, "heading must be a unit vector");
    }
    for (std::size_t k = 1; k < waypoints_.size(); ++k) {
      if (!(waypoints_[k].t > waypoints_[k - 1].t)) {
        throw Error(ErrorCode::InvalidArgument, "waypoint times must be strictly increasing");
      }
      Segment seg;
      for (int axis = 0; axis < 3; ++axis) {
        BoundaryJet from{waypoints_[k - 1].x(axis), 0.0, 0.0, 0.0};
        if (k == 1) {
          from = {waypoints_[0].x(axis), handoff.v(axis), handoff.a(axis), handoff.j(axis)};
        }
        const BoundaryJet to{waypoints_[k].x(axis), 0.0, 0.0, 0.0};
        seg.axes[static_cast<std::size_t>(axis)] = fit_poly8(waypoints_[k - 1].t, waypoints_[k].t, from, to);
      }
      segments_.push_back(seg);
    }
  }

  PositionReference operator()(double t) const {
    PositionReference r;
    r.e1_d = heading_;
    if (segments_.empty() || t < waypoints_.front().t) {
      r.x_d = waypoints_.front().x;
      return r;
    }
    if (t >= waypoints_.back().t) {
      r.x_d = waypoints_.back().x;
      return r;
    }
    for (const auto& seg : segments_) {
      if (t < seg.axes[0].t1()) return eval(seg, t);
    }
    return eval(segments_.back(), t);
  }

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  const Vec3& heading() const { return heading_; }

 private:
  struct Segment {
    std::array<SmoothPoly8, 3> axes;
  };

  PositionReference eval(const Segment& seg, double t) const {
    PositionReference r;
    r.e1_d = heading_;
    for (int a = 0; a < 3; ++a) {
      const auto& p = seg.axes[static_cast<std::size_t>(a)];
      r.x_d(a) = p.eval(t, 0);
      r.x_d_dot(a) = p.eval(t, 1);
      r.x_d_ddot(a) = p.eval(t, 2);
    }
    return r;
  }

  std::vector<Waypoint> waypoints_;
  Vec3 heading_;
  std::vector<Segment> segments_;
};

}  // namespace quadflip
