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

// Scenario configuration: YAML schema (version 1), validation with
// line-anchored errors, serialization, and the built-in presets.
//
// Schema outline (all SI units):
//
//   version: 1
//   name: <string>
//   quad:       {mass, inertia: [Jxx,Jyy,Jzz] | 3x3, arm_length, torque_coeff, gravity}
//   limits:     {f_min, f_max, f_idle: <number> | auto}
//   gains:      {k_R: [3], k_omega: [3], k_x, k_v}
//   barrier:    {k_h1, k_h2, accumulator_clamp, zero_floor, gradient_sign: descent|ascent}
//   recovery:   {enabled, iota: [3], k_xi}
//   simulation: {dt, allocation: nullspace|benchmark, omega_d_max, benchmark_altitude_only}
//   initial:    {x, v, R: 3x3, omega}
//   plan:       list of {mode: position|attitude, start, end, ...}
//   output:     {dir}

#include <yaml-cpp/yaml.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadflip/sim.hpp"

namespace quadflip {

inline constexpr int kSchemaVersion = 1;

struct ScenarioConfig {
  int version = kSchemaVersion;
  std::string name = "unnamed";
  SimConfig sim;
  FlightPlan plan;
  std::string output_dir = "out";

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

class Reader {
 public:
  [[noreturn]] static void fail(const YAML::Node& n, const std::string& path, const std::string& msg) {
    std::string where;
    if (n.IsDefined() && n.Mark().line >= 0) where = "line " + std::to_string(n.Mark().line + 1) + ": ";
    throw Error(ErrorCode::ConfigError, where + path + ": " + msg);
  }

  static void allow_keys(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> keys) {
    if (!n.IsMap()) fail(n, path, "expected a mapping");
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) fail(kv.first, path + "." + key, "unknown key");
    }
  }

  static double number(const YAML::Node& n, const std::string& path) {
    if (!n.IsDefined() || !n.IsScalar()) fail(n, path, "expected a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, path, "must be finite");
      return v;
    } catch (const YAML::Exception&) {
      fail(n, path, "expected a number");
    }
  }

  static double number(const YAML::Node& parent, const char* key, const std::string& path, double fallback) {
    const YAML::Node n = parent[key];
    return n.IsDefined() ? number(n, path + "." + key) : fallback;
  }

  static double positive(const YAML::Node& parent, const char* key, const std::string& path, double fallback) {
    const double v = number(parent, key, path, fallback);
    if (!(v > 0.0)) fail(parent[key].IsDefined() ? parent[key] : parent, path + "." + key, "must be positive");
    return v;
  }

  static bool boolean(const YAML::Node& parent, const char* key, const std::string& path, bool fallback) {
    const YAML::Node n = parent[key];
    if (!n.IsDefined()) return fallback;
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(n, path + "." + key, "expected true or false");
    }
  }

  static std::string text(const YAML::Node& parent, const char* key, const std::string& path,
                          const std::string& fallback) {
    const YAML::Node n = parent[key];
    if (!n.IsDefined()) return fallback;
    if (!n.IsScalar()) fail(n, path + "." + key, "expected a string");
    return n.as<std::string>();
  }

  static Vec3 vec3(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence() || n.size() != 3) fail(n, path, "expected a list of 3 numbers");
    return {number(n[0], path + "[0]"), number(n[1], path + "[1]"), number(n[2], path + "[2]")};
  }

  static Vec3 vec3(const YAML::Node& parent, const char* key, const std::string& path, const Vec3& fallback) {
    const YAML::Node n = parent[key];
    return n.IsDefined() ? vec3(n, path + "." + key) : fallback;
  }

  static Mat3 mat3(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence() || n.size() != 3) fail(n, path, "expected a 3x3 nested list");
    Mat3 m;
    for (std::size_t r = 0; r < 3; ++r) m.row(static_cast<Eigen::Index>(r)) = vec3(n[r], path + "[" + std::to_string(r) + "]").transpose();
    return m;
  }

  static Vec3 unit(const YAML::Node& parent, const char* key, const std::string& path, const Vec3& fallback) {
    const Vec3 v = vec3(parent, key, path, fallback);
    if (std::abs(v.norm() - 1.0) > kUnitTol) fail(parent[key], path + "." + key, "must be a unit vector");
    return v;
  }
};

inline QuadParams parse_quad(const YAML::Node& n) {
  QuadParams p;
  if (!n.IsDefined()) return p;
  Reader::allow_keys(n, "quad", {"mass", "inertia", "arm_length", "torque_coeff", "gravity"});
  p.mass = Reader::positive(n, "mass", "quad", p.mass);
  p.arm_length = Reader::positive(n, "arm_length", "quad", p.arm_length);
  p.torque_coeff = Reader::positive(n, "torque_coeff", "quad", p.torque_coeff);
  p.gravity = Reader::positive(n, "gravity", "quad", p.gravity);
  if (const YAML::Node j = n["inertia"]; j.IsDefined()) {
    if (j.IsSequence() && j.size() == 3 && j[0].IsScalar()) {
      p.inertia = Reader::vec3(j, "quad.inertia").asDiagonal();
    } else {
      p.inertia = Reader::mat3(j, "quad.inertia");
    }
    try {
      p.validate();
    } catch (const Error& e) {
      Reader::fail(j, "quad.inertia", e.what());
    }
  }
  return p;
}

inline ThrustLimits parse_limits(const YAML::Node& n, const QuadParams& p) {
  ThrustLimits l;
  l.f_idle = p.hover_thrust_per_rotor();
  if (!n.IsDefined()) return l;
  Reader::allow_keys(n, "limits", {"f_min", "f_max", "f_idle"});
  l.f_min = Reader::number(n, "f_min", "limits", l.f_min);
  l.f_max = Reader::number(n, "f_max", "limits", l.f_max);
  if (const YAML::Node idle = n["f_idle"]; idle.IsDefined() && !(idle.IsScalar() && idle.Scalar() == "auto")) {
    l.f_idle = Reader::number(idle, "limits.f_idle");
  }
  if (!(0.0 <= l.f_min && l.f_min < l.f_idle && l.f_idle < l.f_max)) {
    Reader::fail(n, "limits", "must satisfy 0 <= f_min < f_idle < f_max");
  }
  return l;
}

inline GainSet parse_gains(const YAML::Node& n) {
  GainSet g;
  if (!n.IsDefined()) return g;
  Reader::allow_keys(n, "gains", {"k_R", "k_omega", "k_x", "k_v"});
  g.k_R = Reader::vec3(n, "k_R", "gains", g.k_R);
  g.k_omega = Reader::vec3(n, "k_omega", "gains", g.k_omega);
  if (!(g.k_R.minCoeff() > 0.0)) Reader::fail(n["k_R"], "gains.k_R", "entries must be positive");
  if (!(g.k_omega.minCoeff() > 0.0)) Reader::fail(n["k_omega"], "gains.k_omega", "entries must be positive");
  g.k_x = Reader::positive(n, "k_x", "gains", g.k_x);
  g.k_v = Reader::positive(n, "k_v", "gains", g.k_v);
  return g;
}

inline BarrierConfig parse_barrier(const YAML::Node& n, const ThrustLimits& limits) {
  BarrierConfig b;
  b.limits = limits;
  b.accumulator_clamp = 50.0;
  if (!n.IsDefined()) return b;
  Reader::allow_keys(n, "barrier", {"k_h1", "k_h2", "accumulator_clamp", "zero_floor", "gradient_sign"});
  b.k_h1 = Reader::positive(n, "k_h1", "barrier", b.k_h1);
  b.k_h2 = Reader::positive(n, "k_h2", "barrier", b.k_h2);
  b.accumulator_clamp = Reader::positive(n, "accumulator_clamp", "barrier", b.accumulator_clamp);
  b.zero_floor = Reader::positive(n, "zero_floor", "barrier", b.zero_floor);
  const std::string sign = Reader::text(n, "gradient_sign", "barrier", "descent");
  if (sign == "descent") {
    b.sign = GradientSign::Descent;
  } else if (sign == "ascent") {
    b.sign = GradientSign::Ascent;
  } else {
    Reader::fail(n["gradient_sign"], "barrier.gradient_sign", "expected descent or ascent");
  }
  if (!(b.lower() < b.limits.f_idle)) Reader::fail(n, "barrier.zero_floor", "must lie below f_idle");
  return b;
}

inline RecoveryConfig parse_recovery(const YAML::Node& n) {
  RecoveryConfig r;
  if (!n.IsDefined()) return r;
  Reader::allow_keys(n, "recovery", {"enabled", "iota", "k_xi"});
  r.enabled = Reader::boolean(n, "enabled", "recovery", r.enabled);
  r.iota = Reader::vec3(n, "iota", "recovery", r.iota);
  r.k_xi = Reader::number(n, "k_xi", "recovery", r.k_xi);
  if (r.k_xi < 0.0) Reader::fail(n["k_xi"], "recovery.k_xi", "must be non-negative");
  return r;
}

inline BodyState parse_initial(const YAML::Node& n) {
  BodyState s;
  if (!n.IsDefined()) return s;
  Reader::allow_keys(n, "initial", {"x", "v", "R", "omega"});
  s.x = Reader::vec3(n, "x", "initial", s.x);
  s.v = Reader::vec3(n, "v", "initial", s.v);
  s.omega = Reader::vec3(n, "omega", "initial", s.omega);
  if (n["R"].IsDefined()) {
    s.R = Reader::mat3(n["R"], "initial.R");
    if (!is_rotation(s.R)) Reader::fail(n["R"], "initial.R", "is not a rotation matrix");
  }
  return s;
}

inline Episode parse_episode(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) Reader::fail(n, path, "expected a mapping");
  Episode e;
  const std::string mode = Reader::text(n, "mode", path, "");
  e.t_start = Reader::number(n["start"], path + ".start");
  e.t_end = Reader::number(n["end"], path + ".end");
  if (!(e.t_end > e.t_start)) Reader::fail(n, path, "end must be after start");
  if (mode == "position") {
    e.mode = FlightMode::Position;
    Reader::allow_keys(n, path, {"mode", "start", "end", "heading", "from_state", "waypoints"});
    e.position.heading = Reader::unit(n, "heading", path, e.position.heading);
    e.position.from_state = Reader::boolean(n, "from_state", path, false);
    const YAML::Node wps = n["waypoints"];
    if (!wps.IsSequence() || wps.size() == 0) Reader::fail(n, path + ".waypoints", "expected a non-empty list");
    for (std::size_t k = 0; k < wps.size(); ++k) {
      const std::string wp = path + ".waypoints[" + std::to_string(k) + "]";
      Reader::allow_keys(wps[k], wp, {"t", "x"});
      Waypoint w{Reader::number(wps[k]["t"], wp + ".t"), Reader::vec3(wps[k]["x"], wp + ".x")};
      if (!e.position.waypoints.empty() && !(w.t > e.position.waypoints.back().t)) {
        Reader::fail(wps[k], wp + ".t", "waypoint times must increase");
      }
      if (e.position.from_state && !(w.t > e.t_start)) {
        Reader::fail(wps[k], wp + ".t", "must be after the episode start when from_state is set");
      }
      e.position.waypoints.push_back(w);
    }
  } else if (mode == "attitude") {
    e.mode = FlightMode::Attitude;
    Reader::allow_keys(n, path, {"mode", "start", "end", "hold", "heading", "flip"});
    e.attitude.hold = Reader::vec3(n["hold"], path + ".hold");
    e.attitude.heading = Reader::unit(n, "heading", path, e.attitude.heading);
    const YAML::Node f = n["flip"];
    const std::string fp = path + ".flip";
    FlipSpec& flip = e.attitude.flip;
    flip.start = e.t_start;
    flip.duration = e.t_end - e.t_start;
    if (f.IsDefined()) {
      Reader::allow_keys(f, fp, {"axis", "angle", "duration", "base_attitude"});
      flip.axis = Reader::unit(f, "axis", fp, flip.axis);
      flip.total_angle = Reader::number(f, "angle", fp, flip.total_angle);
      flip.duration = Reader::positive(f, "duration", fp, flip.duration);
      if (flip.duration > e.t_end - e.t_start + 1e-12) Reader::fail(f, fp + ".duration", "exceeds the episode window");
      if (f["base_attitude"].IsDefined()) {
        flip.base_attitude = Reader::mat3(f["base_attitude"], fp + ".base_attitude");
        if (!is_rotation(flip.base_attitude)) Reader::fail(f["base_attitude"], fp + ".base_attitude", "is not a rotation matrix");
      }
    }
  } else {
    Reader::fail(n["mode"].IsDefined() ? n["mode"] : n, path + ".mode", "expected position or attitude");
  }
  return e;
}

inline YAML::Node vec_node(const Vec3& v) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (int i = 0; i < 3; ++i) n.push_back(v(i));
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

inline YAML::Node mat_node(const Mat3& m) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (int r = 0; r < 3; ++r) n.push_back(vec_node(m.row(r).transpose()));
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

}  // namespace detail

inline ScenarioConfig parse_scenario(const YAML::Node& root) {
  using detail::Reader;
  if (!root.IsMap()) throw Error(ErrorCode::ConfigError, "scenario must be a YAML mapping");
  Reader::allow_keys(root, "", {"version", "name", "quad", "limits", "gains", "barrier", "recovery",
                                "simulation", "initial", "plan", "output"});
  ScenarioConfig c;
  if (!root["version"].IsDefined()) Reader::fail(root, "version", "missing schema version");
  c.version = static_cast<int>(Reader::number(root["version"], "version"));
  if (c.version != kSchemaVersion) Reader::fail(root["version"], "version", "unsupported schema version");
  c.name = Reader::text(root, "name", "", c.name);
  c.sim.params = detail::parse_quad(root["quad"]);
  const ThrustLimits limits = detail::parse_limits(root["limits"], c.sim.params);
  c.sim.gains = detail::parse_gains(root["gains"]);
  c.sim.barrier = detail::parse_barrier(root["barrier"], limits);
  c.sim.recovery = detail::parse_recovery(root["recovery"]);
  c.sim.initial = detail::parse_initial(root["initial"]);
  if (const YAML::Node s = root["simulation"]; s.IsDefined()) {
    Reader::allow_keys(s, "simulation", {"dt", "allocation", "omega_d_max", "benchmark_altitude_only"});
    c.sim.dt = Reader::positive(s, "dt", "simulation", c.sim.dt);
    c.sim.omega_d_max = Reader::positive(s, "omega_d_max", "simulation", c.sim.omega_d_max);
    c.sim.benchmark_altitude_only = Reader::boolean(s, "benchmark_altitude_only", "simulation", false);
    const std::string a = Reader::text(s, "allocation", "simulation", "nullspace");
    if (a == "nullspace") {
      c.sim.allocation = AllocationMode::NullSpace;
    } else if (a == "benchmark") {
      c.sim.allocation = AllocationMode::Benchmark;
    } else {
      Reader::fail(s["allocation"], "simulation.allocation", "expected nullspace or benchmark");
    }
  }
  const YAML::Node plan = root["plan"];
  if (!plan.IsSequence() || plan.size() == 0) Reader::fail(root, "plan", "expected a non-empty list of episodes");
  for (std::size_t k = 0; k < plan.size(); ++k) {
    c.plan.episodes.push_back(detail::parse_episode(plan[k], "plan[" + std::to_string(k) + "]"));
    if (k > 0 && c.plan.episodes[k].t_start != c.plan.episodes[k - 1].t_end) {
      Reader::fail(plan[k], "plan[" + std::to_string(k) + "].start", "must equal the previous episode's end");
    }
  }
  const double steps = c.plan.duration() / c.sim.dt;
  if (std::abs(steps - std::round(steps)) > 1e-6) {
    Reader::fail(root["simulation"], "simulation.dt", "plan duration is not a whole number of steps");
  }
  if (const YAML::Node o = root["output"]; o.IsDefined()) {
    Reader::allow_keys(o, "output", {"dir"});
    c.output_dir = Reader::text(o, "dir", "output", c.output_dir);
  }
  return c;
}

inline ScenarioConfig parse_scenario_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  return parse_scenario(root);
}

inline ScenarioConfig load_scenario(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw Error(ErrorCode::ConfigError, "cannot read " + path);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::ConfigError, path + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  return parse_scenario(root);
}

inline std::string serialize_scenario(const ScenarioConfig& c) {
  using detail::mat_node;
  using detail::vec_node;
  const auto& s = c.sim;
  YAML::Node root;
  root["version"] = c.version;
  root["name"] = c.name;
  YAML::Node quad;
  quad["mass"] = s.params.mass;
  quad["inertia"] = mat_node(s.params.inertia);
  quad["arm_length"] = s.params.arm_length;
  quad["torque_coeff"] = s.params.torque_coeff;
  quad["gravity"] = s.params.gravity;
  root["quad"] = quad;
  YAML::Node limits;
  limits["f_min"] = s.barrier.limits.f_min;
  limits["f_max"] = s.barrier.limits.f_max;
  limits["f_idle"] = s.barrier.limits.f_idle;
  root["limits"] = limits;
  YAML::Node gains;
  gains["k_R"] = vec_node(s.gains.k_R);
  gains["k_omega"] = vec_node(s.gains.k_omega);
  gains["k_x"] = s.gains.k_x;
  gains["k_v"] = s.gains.k_v;
  root["gains"] = gains;
  YAML::Node barrier;
  barrier["k_h1"] = s.barrier.k_h1;
  barrier["k_h2"] = s.barrier.k_h2;
  barrier["accumulator_clamp"] = s.barrier.accumulator_clamp;
  barrier["zero_floor"] = s.barrier.zero_floor;
  barrier["gradient_sign"] = s.barrier.sign == GradientSign::Descent ? "descent" : "ascent";
  root["barrier"] = barrier;
  YAML::Node recovery;
  recovery["enabled"] = s.recovery.enabled;
  recovery["iota"] = vec_node(s.recovery.iota);
  recovery["k_xi"] = s.recovery.k_xi;
  root["recovery"] = recovery;
  YAML::Node sim;
  sim["dt"] = s.dt;
  sim["allocation"] = std::string(to_string(s.allocation));
  sim["omega_d_max"] = s.omega_d_max;
  sim["benchmark_altitude_only"] = s.benchmark_altitude_only;
  root["simulation"] = sim;
  YAML::Node init;
  init["x"] = vec_node(s.initial.x);
  init["v"] = vec_node(s.initial.v);
  init["R"] = mat_node(s.initial.R);
  init["omega"] = vec_node(s.initial.omega);
  root["initial"] = init;
  YAML::Node plan(YAML::NodeType::Sequence);
  for (const auto& e : c.plan.episodes) {
    YAML::Node ep;
    ep["mode"] = std::string(to_string(e.mode));
    ep["start"] = e.t_start;
    ep["end"] = e.t_end;
    if (e.mode == FlightMode::Position) {
      ep["heading"] = vec_node(e.position.heading);
      ep["from_state"] = e.position.from_state;
      YAML::Node wps(YAML::NodeType::Sequence);
      for (const auto& w : e.position.waypoints) {
        YAML::Node wn;
        wn["t"] = w.t;
        wn["x"] = vec_node(w.x);
        wps.push_back(wn);
      }
      ep["waypoints"] = wps;
    } else {
      ep["hold"] = vec_node(e.attitude.hold);
      ep["heading"] = vec_node(e.attitude.heading);
      YAML::Node flip;
      flip["axis"] = vec_node(e.attitude.flip.axis);
      flip["angle"] = e.attitude.flip.total_angle;
      flip["duration"] = e.attitude.flip.duration;
      flip["base_attitude"] = mat_node(e.attitude.flip.base_attitude);
      ep["flip"] = flip;
    }
    plan.push_back(ep);
  }
  root["plan"] = plan;
  YAML::Node out;
  out["dir"] = c.output_dir;
  root["output"] = out;
  YAML::Emitter em;
  em.SetDoublePrecision(17);
  em << root;
  return std::string(em.c_str()) + "\n";
}

/// Scenario of the aggressive-flip experiment: climb to [2, 0, 10], full
/// turn about body e2 during [6, 7), recover from the post-flip state.
inline ScenarioConfig flip_scenario(AllocationMode allocation, bool recovery, const Vec3& axis = Vec3::UnitY()) {
  ScenarioConfig c;
  c.sim.barrier.limits.f_idle = c.sim.params.hover_thrust_per_rotor();
  c.sim.barrier.accumulator_clamp = 50.0;
  c.sim.allocation = allocation;
  c.sim.recovery.enabled = recovery;
  const Vec3 target(2.0, 0.0, 10.0);
  Episode climb;
  climb.mode = FlightMode::Position;
  climb.t_start = 0.0;
  climb.t_end = 6.0;
  climb.position.waypoints = {{0.5, Vec3::Zero()}, {4.5, target}};
  Episode flip;
  flip.mode = FlightMode::Attitude;
  flip.t_start = 6.0;
  flip.t_end = 7.0;
  flip.attitude.hold = target;
  flip.attitude.flip.axis = axis;
  flip.attitude.flip.start = 6.0;
  flip.attitude.flip.duration = 1.0;
  Episode recover;
  recover.mode = FlightMode::Position;
  recover.t_start = 7.0;
  recover.t_end = 10.0;
  recover.position.from_state = true;
  recover.position.waypoints = {{10.0, target}};
  c.plan.episodes = {climb, flip, recover};
  return c;
}

inline std::map<std::string, ScenarioConfig> builtin_presets() {
  std::map<std::string, ScenarioConfig> presets;
  auto add = [&](const std::string& name, ScenarioConfig c) {
    c.name = name;
    presets.emplace(name, std::move(c));
  };
  add("flip-nullspace", flip_scenario(AllocationMode::NullSpace, true));
  add("flip-benchmark", flip_scenario(AllocationMode::Benchmark, true));
  add("flip-nullspace-nofp", flip_scenario(AllocationMode::NullSpace, false));
  add("flip-nullspace-e1", flip_scenario(AllocationMode::NullSpace, true, Vec3::UnitX()));
  ScenarioConfig hover;
  hover.sim.barrier.limits.f_idle = hover.sim.params.hover_thrust_per_rotor();
  hover.sim.barrier.accumulator_clamp = 50.0;
  Episode e;
  e.mode = FlightMode::Position;
  e.t_start = 0.0;
  e.t_end = 10.0;
  e.position.waypoints = {{0.0, Vec3::Zero()}};
  hover.plan.episodes = {e};
  add("hover-10s", hover);
  return presets;
}

inline ScenarioConfig preset(const std::string& name) {
  const auto all = builtin_presets();
  const auto it = all.find(name);
  if (it == all.end()) throw Error(ErrorCode::ConfigError, "unknown preset '" + name + "'");
  return it->second;
}

/// Two scenarios are comparable when they differ only in the allocation
/// path and the recovery-thrust switch.
inline void require_comparable(const ScenarioConfig& a, const ScenarioConfig& b) {
  SimConfig sa = a.sim;
  SimConfig sb = b.sim;
  sb.allocation = sa.allocation;
  sb.recovery.enabled = sa.recovery.enabled;
  sb.benchmark_altitude_only = sa.benchmark_altitude_only;
  if (!(a.plan == b.plan) || !(sa == sb)) {
    throw Error(ErrorCode::MismatchedPlans, "'" + a.name + "' and '" + b.name +
                                                "' differ in more than allocation or recovery options");
  }
}

}  // namespace quadflip
