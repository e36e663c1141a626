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

// Fixed-schema CSV log: one row per step, 17 significant digits.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "quadflip/sim.hpp"

namespace quadflip {

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"t"};
    for (const char* g : {"x", "v"}) {
      for (int i = 1; i <= 3; ++i) c.push_back(g + std::to_string(i));
    }
    for (int r = 1; r <= 3; ++r) {
      for (int k = 1; k <= 3; ++k) c.push_back("R" + std::to_string(r) + std::to_string(k));
    }
    for (int i = 1; i <= 3; ++i) c.push_back("w" + std::to_string(i));
    for (const char* g : {"Fc", "Fa"}) {
      for (int i = 1; i <= 4; ++i) c.push_back(g + std::to_string(i));
    }
    c.push_back("f");
    for (int i = 1; i <= 3; ++i) c.push_back("u" + std::to_string(i));
    for (const char* s : {"psi", "e_w_norm", "e_x_norm", "mode"}) c.emplace_back(s);
    for (int i = 1; i <= 4; ++i) c.push_back("sat" + std::to_string(i));
    for (int i = 1; i <= 3; ++i) c.push_back("xd" + std::to_string(i));
    c.emplace_back("episode");
    for (const char* g : {"xi", "acc"}) {
      for (int i = 1; i <= 4; ++i) c.push_back(g + std::to_string(i));
    }
    for (const char* s : {"grad_norm", "domain_skips", "clamped"}) c.emplace_back(s);
    return c;
  }();
  return cols;
}

namespace detail {

inline void put(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += ',';
  line += buf;
}

inline void put(std::string& line, int v) {
  line += ',';
  line += std::to_string(v);
}

}  // namespace detail

inline std::string csv_row(const StepRecord& r) {
  using detail::put;
  std::string line;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", r.t);
  line += buf;
  for (int i = 0; i < 3; ++i) put(line, r.state.x(i));
  for (int i = 0; i < 3; ++i) put(line, r.state.v(i));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) put(line, r.state.R(a, b));
  }
  for (int i = 0; i < 3; ++i) put(line, r.state.omega(i));
  for (int i = 0; i < 4; ++i) put(line, r.commanded(i));
  for (int i = 0; i < 4; ++i) put(line, r.applied(i));
  put(line, r.f);
  for (int i = 0; i < 3; ++i) put(line, r.u(i));
  put(line, r.psi);
  put(line, r.e_omega_norm);
  put(line, r.e_x_norm);
  put(line, static_cast<int>(r.mode));
  for (bool s : r.saturated) put(line, s ? 1 : 0);
  for (int i = 0; i < 3; ++i) put(line, r.x_d(i));
  put(line, r.episode);
  for (int i = 0; i < 4; ++i) put(line, r.xi(i));
  for (int i = 0; i < 4; ++i) put(line, r.accumulator(i));
  put(line, r.gradient_norm);
  put(line, r.domain_skips);
  put(line, r.clamped ? 1 : 0);
  return line;
}

inline void write_csv(std::ostream& os, const SimLog& log) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : log.records) os << csv_row(r) << '\n';
}

inline void write_csv(const std::string& path, const SimLog& log) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  write_csv(os, log);
}

/// Rebuilds the step records of a log from its CSV.
inline SimLog read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::EmptyLog, "CSV is empty");
  std::string header;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) header += (i ? "," : "") + cols[i];
  if (line != header) throw Error(ErrorCode::InvalidArgument, "CSV header does not match the log schema");
  SimLog log;
  std::vector<double> v;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    v.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      const std::string cell = line.substr(pos, end - pos);
      char* stop = nullptr;
      const double d = std::strtod(cell.c_str(), &stop);
      if (cell.empty() || *stop != '\0') {
        throw Error(ErrorCode::InvalidArgument, "CSV row " + std::to_string(row) + ": bad cell '" + cell + "'");
      }
      v.push_back(d);
      pos = end + 1;
    }
    if (v.size() != cols.size()) {
      throw Error(ErrorCode::InvalidArgument, "CSV row " + std::to_string(row) + ": expected " +
                                                  std::to_string(cols.size()) + " cells");
    }
    StepRecord r;
    std::size_t k = 0;
    auto next = [&]() { return v[k++]; };
    r.t = next();
    for (int i = 0; i < 3; ++i) r.state.x(i) = next();
    for (int i = 0; i < 3; ++i) r.state.v(i) = next();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) r.state.R(a, b) = next();
    }
    for (int i = 0; i < 3; ++i) r.state.omega(i) = next();
    for (int i = 0; i < 4; ++i) r.commanded(i) = next();
    for (int i = 0; i < 4; ++i) r.applied(i) = next();
    r.f = next();
    for (int i = 0; i < 3; ++i) r.u(i) = next();
    r.psi = next();
    r.e_omega_norm = next();
    r.e_x_norm = next();
    r.mode = static_cast<FlightMode>(static_cast<int>(next()));
    for (auto& s : r.saturated) s = next() != 0.0;
    for (int i = 0; i < 3; ++i) r.x_d(i) = next();
    r.episode = static_cast<int>(next());
    for (int i = 0; i < 4; ++i) r.xi(i) = next();
    for (int i = 0; i < 4; ++i) r.accumulator(i) = next();
    r.gradient_norm = next();
    r.domain_skips = static_cast<int>(next());
    r.clamped = next() != 0.0;
    log.records.push_back(r);
  }
  if (log.records.size() >= 2) log.dt = log.records[1].t - log.records[0].t;
  return log;
}

inline SimLog read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  return read_csv(is);
}

}  // namespace quadflip
