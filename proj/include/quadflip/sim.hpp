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

// Closed-loop episode runner: flight-mode scheduling, controller, allocation,
// plant-side saturation and RK4 stepping, with one log record per step.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "quadflip/allocation.hpp"
#include "quadflip/trajectory.hpp"

namespace quadflip {

enum class FlightMode { Position, Attitude };
enum class AllocationMode { NullSpace, Benchmark };

inline std::string_view to_string(FlightMode m) { return m == FlightMode::Position ? "position" : "attitude"; }
inline std::string_view to_string(AllocationMode m) {
  return m == AllocationMode::NullSpace ? "nullspace" : "benchmark";
}

struct PositionEpisode {
  std::vector<Waypoint> waypoints;
  Vec3 heading = Vec3::UnitX();
  /// Replace the first waypoint by the state at episode entry, using the
  /// entry velocity as the initial derivative of the first segment.
  bool from_state = false;

  friend bool operator==(const PositionEpisode&, const PositionEpisode&) = default;
};

struct AttitudeEpisode {
  FlipSpec flip;
  /// Position held by the recovery thrust (and by the benchmark altitude
  /// command) while the attitude is tracked.
  Vec3 hold = Vec3::Zero();
  Vec3 heading = Vec3::UnitX();

  friend bool operator==(const AttitudeEpisode&, const AttitudeEpisode&) = default;
};

struct Episode {
  FlightMode mode = FlightMode::Position;
  double t_start = 0.0;
  double t_end = 0.0;
  PositionEpisode position;
  AttitudeEpisode attitude;

  friend bool operator==(const Episode&, const Episode&) = default;
};

struct FlightPlan {
  std::vector<Episode> episodes;

  double t_start() const { return episodes.front().t_start; }
  double t_end() const { return episodes.back().t_end; }
  double duration() const { return t_end() - t_start(); }

  void validate() const {
    if (episodes.empty()) throw Error(ErrorCode::InvalidArgument, "flight plan has no episodes");
    for (std::size_t k = 0; k < episodes.size(); ++k) {
      const auto& e = episodes[k];
      if (!(e.t_end > e.t_start)) {
        throw Error(ErrorCode::InvalidArgument, "episode " + std::to_string(k) + " has an empty window");
      }
      if (k > 0 && e.t_start != episodes[k - 1].t_end) {
        throw Error(ErrorCode::InvalidArgument,
                    "episode " + std::to_string(k) + " does not start where the previous one ends");
      }
      if (e.mode == FlightMode::Position && e.position.waypoints.empty()) {
        throw Error(ErrorCode::InvalidArgument, "position episode " + std::to_string(k) + " has no waypoints");
      }
    }
  }

  friend bool operator==(const FlightPlan&, const FlightPlan&) = default;
};

struct SimConfig {
  QuadParams params;
  GainSet gains;
  BarrierConfig barrier;
  RecoveryConfig recovery;
  AllocationMode allocation = AllocationMode::NullSpace;
  /// Benchmark altitude command uses only the vertical error components.
  bool benchmark_altitude_only = false;
  double dt = 1e-3;
  double omega_d_max = 16.0;
  BodyState initial;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct StepRecord {
  double t = 0.0;
  BodyState state;
  Vec3 x_d = Vec3::Zero();
  double psi = 0.0;
  double e_omega_norm = 0.0;
  double e_x_norm = 0.0;
  ThrustVector commanded = ThrustVector::Zero();
  ThrustVector applied = ThrustVector::Zero();
  std::array<bool, 4> saturated{};
  FlightMode mode = FlightMode::Position;
  int episode = 0;
  double f = 0.0;
  Vec3 u = Vec3::Zero();
  Vec4 xi = Vec4::Zero();
  Vec4 accumulator = Vec4::Zero();
  double gradient_norm = 0.0;
  int domain_skips = 0;
  bool clamped = false;

  bool any_saturated() const { return saturated[0] || saturated[1] || saturated[2] || saturated[3]; }
};

struct SwitchCheck {
  double t = 0.0;
  int episode = 0;
  FlightMode mode = FlightMode::Position;
  RegionCheck region;
};

struct SimLog {
  double dt = 0.0;
  std::vector<StepRecord> records;
  std::vector<SwitchCheck> switches;
  std::vector<std::string> warnings;
  std::optional<std::string> abort_reason;
};

/// Benchmark allocation: F = B^-1 [f_alt; u].
inline ThrustVector benchmark_attitude_allocation(const Vec3& u, double f_alt, const QuadParams& p) {
  return wrench_to_thrusts(f_alt, u, p);
}

namespace detail {

inline long long step_index(double t, double dt) { return std::llround(t / dt); }

class ClosedLoop {
 public:
  ClosedLoop(const FlightPlan& plan, const SimConfig& cfg)
      : plan_(plan), cfg_(cfg), alloc_(build_allocation(cfg.params)), tracker_(cfg.dt) {}

  SimLog run() {
    SimLog log;
    log.dt = cfg_.dt;
    const long long first = step_index(plan_.t_start(), cfg_.dt);
    const long long last = step_index(plan_.t_end(), cfg_.dt);
    if (std::abs(static_cast<double>(last - first) * cfg_.dt - plan_.duration()) > 1e-9 * plan_.duration()) {
      throw Error(ErrorCode::InvalidArgument, "plan duration is not a whole number of steps");
    }
    std::vector<long long> starts;
    for (const auto& e : plan_.episodes) starts.push_back(step_index(e.t_start, cfg_.dt));

    BodyState state = cfg_.initial;
    ThrustVector F_prev = ThrustVector::Constant(cfg_.params.hover_thrust_per_rotor());
    int current = -1;
    log.records.reserve(static_cast<std::size_t>(last - first + 1));
    try {
      for (long long k = first; k <= last; ++k) {
        const double t = static_cast<double>(k) * cfg_.dt;
        int e = 0;
        while (e + 1 < static_cast<int>(starts.size()) && k >= starts[static_cast<std::size_t>(e + 1)]) ++e;
        const bool entering = e != current;
        if (entering) {
          enter(e, t, state);
          current = e;
        }
        StepRecord rec = control(e, t, state, F_prev);
        rec.episode = e;
        if (entering) {
          const RegionCheck rc = check_region_of_attraction(state, last_attitude_ref_, cfg_.gains, cfg_.params);
          log.switches.push_back({t, e, rec.mode, rc});
          if (!rc.inside) {
            log.warnings.push_back("t=" + std::to_string(t) + ": state outside region of attraction at entry of episode " +
                                   std::to_string(e));
          }
        }
        const SaturationResult sat = saturate(rec.commanded, cfg_.barrier.limits);
        rec.applied = sat.applied;
        rec.saturated = sat.flags;
        rec.t = t;
        rec.state = state;
        F_prev = rec.commanded;
        log.records.push_back(rec);
        if (k < last) state = rk4_step(state, sat.applied, cfg_.params, cfg_.dt);
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::AntipodalSingularity && err.code() != ErrorCode::NonFiniteState) throw;
      log.abort_reason = err.what();
    }
    return log;
  }

 private:
  const Episode& episode(int e) const { return plan_.episodes[static_cast<std::size_t>(e)]; }

  void enter(int e, double t, const BodyState& state) {
    const Episode& ep = episode(e);
    if (ep.mode == FlightMode::Position) {
      std::vector<Waypoint> wps = ep.position.waypoints;
      HandOff handoff;
      if (ep.position.from_state) {
        wps.insert(wps.begin(), Waypoint{t, state.x});
        handoff.v = state.v;
      }
      position_.emplace(std::move(wps), ep.position.heading, handoff);
      tracker_.reset();
    } else {
      flip_.emplace(ep.attitude.flip);
      flip_->check_rate_bound(cfg_.omega_d_max);
      hold_ = PositionReference{ep.attitude.hold, Vec3::Zero(), Vec3::Zero(), ep.attitude.heading};
      xi_ = XiState{};
    }
  }

  StepRecord control(int e, double t, const BodyState& s, const ThrustVector& F_prev) {
    StepRecord rec;
    const Episode& ep = episode(e);
    rec.mode = ep.mode;
    const auto& p = cfg_.params;
    const auto& g = cfg_.gains;
    PositionReference pos_ref;
    AttitudeReference att_ref;
    if (ep.mode == FlightMode::Position) {
      pos_ref = (*position_)(t);
      const Vec3 force = desired_force(s, pos_ref, g, p);
      att_ref = tracker_.update(computed_rotation(force, pos_ref.e1_d));
      rec.u = attitude_control_moment(s, att_ref, g, p);
      rec.f = force.dot(s.R * e3());
      rec.commanded = allocate_position_mode(rec.f, rec.u, p);
    } else {
      pos_ref = hold_;
      att_ref = (*flip_)(t);
      rec.u = attitude_control_moment(s, att_ref, g, p);
      if (cfg_.allocation == AllocationMode::NullSpace) {
        const double f_p = cfg_.recovery.enabled ? position_recovery_thrust(s, pos_ref, cfg_.recovery, g, p) : 0.0;
        const XiUpdate up = update_xi(xi_, F_prev, f_p, alloc_.B_inv, cfg_.dt, cfg_.barrier);
        xi_ = up.state;
        rec.commanded = allocate_attitude_mode(rec.u, up.xi, alloc_);
        rec.f = rec.commanded.sum();
        rec.xi = up.xi;
        rec.accumulator = up.state.accumulator;
        rec.gradient_norm = up.gradient.norm();
        rec.domain_skips = up.domain_skips;
        rec.clamped = up.clamped;
      } else {
        PositionReference alt_ref = pos_ref;
        BodyState probe = s;
        if (cfg_.benchmark_altitude_only) {
          // Lateral errors are removed so only the vertical channel is fed back.
          probe.x.head<2>() = alt_ref.x_d.head<2>();
          probe.v.head<2>() = alt_ref.x_d_dot.head<2>();
        }
        rec.f = collective_thrust(probe, alt_ref, g, p);
        rec.commanded = benchmark_attitude_allocation(rec.u, rec.f, p);
      }
    }
    last_attitude_ref_ = att_ref;
    const ErrorState err = attitude_errors(s.R, s.omega, att_ref.R_d, att_ref.omega_d);
    rec.psi = err.psi;
    rec.e_omega_norm = err.e_omega.norm();
    rec.x_d = pos_ref.x_d;
    rec.e_x_norm = position_error(s, pos_ref).norm();
    return rec;
  }

  const FlightPlan& plan_;
  const SimConfig& cfg_;
  AllocationMatrices alloc_;
  ComputedAttitudeTracker tracker_;
  std::optional<PositionTrajectory> position_;
  std::optional<FlipTrajectory> flip_;
  PositionReference hold_;
  XiState xi_;
  AttitudeReference last_attitude_ref_;
};

}  // namespace detail

/// Runs the plan in closed loop. An antipodal attitude error or a non-finite
/// state ends the run early; the partial log carries the reason.
inline SimLog run(const FlightPlan& plan, const SimConfig& cfg) {
  plan.validate();
  cfg.params.validate();
  cfg.gains.validate();
  cfg.barrier.validate();
  if (!(cfg.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!is_rotation(cfg.initial.R)) throw Error(ErrorCode::InvalidArgument, "initial attitude is not a rotation");
  return detail::ClosedLoop(plan, cfg).run();
}

struct WindowMetrics {
  int episode = 0;
  FlightMode mode = FlightMode::Position;
  double t_start = 0.0;
  double t_end = 0.0;
  double max_psi = 0.0;
  double max_e_omega = 0.0;
  double max_e_x = 0.0;
  double max_altitude_deviation = 0.0;
  double min_applied = 0.0;
  double max_applied = 0.0;
  int saturation_steps = 0;
  double decay_rate = 0.0;
  double terminal_psi = 0.0;
  double terminal_e_x = 0.0;
};

struct SummaryMetrics {
  std::size_t steps = 0;
  double max_psi = 0.0;
  double max_e_omega = 0.0;
  double max_e_x = 0.0;
  double min_applied = 0.0;
  double max_applied = 0.0;
  int saturation_steps = 0;
  double decay_rate = 0.0;
  std::vector<WindowMetrics> windows;

  /// First window of the given mode, if any.
  const WindowMetrics* first_window(FlightMode m) const {
    for (const auto& w : windows) {
      if (w.mode == m) return &w;
    }
    return nullptr;
  }
};

/// Least-squares decay rate of log(psi) against t (positive for decay).
/// Samples with psi <= 0 are ignored; fewer than two samples give 0.
inline double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& psi) {
  double n = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(psi[k] > 0.0) || !std::isfinite(psi[k])) continue;
    const double y = std::log(psi[k]);
    n += 1.0;
    st += t[k];
    sy += y;
    stt += t[k] * t[k];
    sty += t[k] * y;
  }
  if (n < 2.0) return 0.0;
  const double den = n * stt - st * st;
  if (!(std::abs(den) > 0.0)) return 0.0;
  return -(n * sty - st * sy) / den;
}

inline SummaryMetrics summarize(const SimLog& log) {
  if (log.records.empty()) throw Error(ErrorCode::EmptyLog, "log has no records");
  SummaryMetrics m;
  m.steps = log.records.size();
  m.min_applied = log.records.front().applied.minCoeff();
  m.max_applied = log.records.front().applied.maxCoeff();
  std::vector<double> ts, ps, wts, wps;
  WindowMetrics* w = nullptr;
  auto close_window = [&]() {
    if (w != nullptr) w->decay_rate = fit_decay_rate(wts, wps);
    wts.clear();
    wps.clear();
  };
  for (const auto& r : log.records) {
    if (w == nullptr || r.episode != w->episode) {
      close_window();
      WindowMetrics nw;
      nw.episode = r.episode;
      nw.mode = r.mode;
      nw.t_start = r.t;
      nw.min_applied = r.applied.minCoeff();
      nw.max_applied = r.applied.maxCoeff();
      m.windows.push_back(nw);
      w = &m.windows.back();
    }
    const double alt = std::abs(r.state.x.z() - r.x_d.z());
    w->t_end = r.t;
    w->max_psi = std::max(w->max_psi, r.psi);
    w->max_e_omega = std::max(w->max_e_omega, r.e_omega_norm);
    w->max_e_x = std::max(w->max_e_x, r.e_x_norm);
    w->max_altitude_deviation = std::max(w->max_altitude_deviation, alt);
    w->min_applied = std::min(w->min_applied, r.applied.minCoeff());
    w->max_applied = std::max(w->max_applied, r.applied.maxCoeff());
    w->terminal_psi = r.psi;
    w->terminal_e_x = r.e_x_norm;
    if (r.any_saturated()) {
      ++w->saturation_steps;
      ++m.saturation_steps;
    }
    m.max_psi = std::max(m.max_psi, r.psi);
    m.max_e_omega = std::max(m.max_e_omega, r.e_omega_norm);
    m.max_e_x = std::max(m.max_e_x, r.e_x_norm);
    m.min_applied = std::min(m.min_applied, r.applied.minCoeff());
    m.max_applied = std::max(m.max_applied, r.applied.maxCoeff());
    ts.push_back(r.t);
    ps.push_back(r.psi);
    wts.push_back(r.t);
    wps.push_back(r.psi);
  }
  close_window();
  m.decay_rate = fit_decay_rate(ts, ps);
  return m;
}

}  // namespace quadflip
