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

// Human-readable summary, certificate table and comparison report.

#include <cstdio>
#include <string>

#include "quadflip/scenario.hpp"

namespace quadflip {

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string g(double v) { return fmt("%.6g", v); }

inline std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

inline std::string ratio(double b, double a) {
  if (a == b) return "1";
  if (a == 0.0) return "inf";
  return g(b / a);
}

}  // namespace detail

inline std::string format_certificate(const StabilityCertificate& c) {
  using detail::g;
  using detail::pad;
  std::string out = "stability certificate\n";
  auto row = [&](const std::string& k, const std::string& v) { out += "  " + pad(k, 18) + v + "\n"; };
  row("k_R (scalar)", g(c.k_R));
  row("k_omega (scalar)", g(c.k_omega));
  row("lambda_min(J)", g(c.lambda_min_J));
  row("lambda_max(J)", g(c.lambda_max_J));
  row("|2J - tr(J) I|", g(c.inertia_skew_norm));
  row("omega_d_max", g(c.omega_d_max));
  row("B1", g(c.B1));
  row("B2", g(c.B2));
  row("c2 supremum", g(c.c2_sup));
  row("c2", g(c.c2));
  row("lambda_min(W2)", g(c.lambda_min_W2));
  row("lambda_min(Pi1)", g(c.lambda_min_Pi1));
  row("lambda_max(Pi2)", g(c.lambda_max_Pi2));
  row("tau", g(c.tau));
  row("valid", c.valid ? "yes" : "no");
  for (const auto& r : c.reasons) out += "  reason: " + r + "\n";
  return out;
}

inline std::string format_summary(const SummaryMetrics& m) {
  using detail::g;
  using detail::pad;
  std::string out;
  out += "steps             " + std::to_string(m.steps) + "\n";
  out += "saturation steps  " + std::to_string(m.saturation_steps) + "\n";
  out += "max psi           " + g(m.max_psi) + "\n";
  out += "max |e_omega|     " + g(m.max_e_omega) + "\n";
  out += "max |e_x|         " + g(m.max_e_x) + "\n";
  out += "applied thrust    [" + g(m.min_applied) + ", " + g(m.max_applied) + "]\n";
  out += "psi decay rate    " + g(m.decay_rate) + "\n";
  out += "\nwindows\n";
  out += "  " + pad("#", 4) + pad("mode", 10) + pad("t0", 8) + pad("t1", 8) + pad("max psi", 14) +
         pad("max |e_w|", 14) + pad("max |e_x|", 14) + pad("max |dz|", 14) + pad("F min", 12) + pad("F max", 12) +
         "sat\n";
  for (const auto& w : m.windows) {
    out += "  " + pad(std::to_string(w.episode), 4) + pad(std::string(to_string(w.mode)), 10) + pad(g(w.t_start), 8) +
           pad(g(w.t_end), 8) + pad(g(w.max_psi), 14) + pad(g(w.max_e_omega), 14) + pad(g(w.max_e_x), 14) +
           pad(g(w.max_altitude_deviation), 14) + pad(g(w.min_applied), 12) + pad(g(w.max_applied), 12) +
           std::to_string(w.saturation_steps) + "\n";
  }
  return out;
}

inline std::string format_run_report(const ScenarioConfig& c, const SimLog& log, const SummaryMetrics& m,
                                     const StabilityCertificate& cert) {
  std::string out = "scenario          " + c.name + "\n";
  out += "allocation        " + std::string(to_string(c.sim.allocation)) + "\n";
  out += "recovery thrust   " + std::string(c.sim.recovery.enabled ? "on" : "off") + "\n";
  out += "dt                " + detail::g(c.sim.dt) + "\n";
  out += format_summary(m);
  if (log.abort_reason) out += "\naborted: " + *log.abort_reason + "\n";
  for (const auto& w : log.warnings) out += "warning: " + w + "\n";
  out += "\n" + format_certificate(cert);
  return out;
}

/// Metric pairs (A, B) with B/A ratios, for whole runs and the first
/// attitude window.
struct Comparison {
  struct Row {
    std::string metric;
    double a = 0.0;
    double b = 0.0;
  };
  std::string name_a;
  std::string name_b;
  std::vector<Row> rows;
};

inline Comparison compare_summaries(const std::string& name_a, const SummaryMetrics& a, const std::string& name_b,
                                    const SummaryMetrics& b) {
  Comparison c{name_a, name_b, {}};
  auto add = [&](const std::string& k, double x, double y) { c.rows.push_back({k, x, y}); };
  add("max psi", a.max_psi, b.max_psi);
  add("max |e_omega|", a.max_e_omega, b.max_e_omega);
  add("max |e_x|", a.max_e_x, b.max_e_x);
  add("saturation steps", a.saturation_steps, b.saturation_steps);
  const WindowMetrics* wa = a.first_window(FlightMode::Attitude);
  const WindowMetrics* wb = b.first_window(FlightMode::Attitude);
  if (wa != nullptr && wb != nullptr) {
    add("flip max psi", wa->max_psi, wb->max_psi);
    add("flip max |e_omega|", wa->max_e_omega, wb->max_e_omega);
    add("flip max |e_x|", wa->max_e_x, wb->max_e_x);
    add("flip max |dz|", wa->max_altitude_deviation, wb->max_altitude_deviation);
    add("flip saturation steps", wa->saturation_steps, wb->saturation_steps);
  }
  return c;
}

inline std::string format_comparison(const Comparison& c) {
  using detail::g;
  using detail::pad;
  std::string out = "A: " + c.name_a + "\nB: " + c.name_b + "\n\n";
  out += "  " + pad("metric", 24) + pad("A", 16) + pad("B", 16) + "B/A\n";
  for (const auto& r : c.rows) {
    out += "  " + pad(r.metric, 24) + pad(g(r.a), 16) + pad(g(r.b), 16) + detail::ratio(r.b, r.a) + "\n";
  }
  return out;
}

}  // namespace quadflip
