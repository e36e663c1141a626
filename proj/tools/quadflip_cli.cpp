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

// quadflip command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "quadflip.hpp"

namespace fs = std::filesystem;
using namespace quadflip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;
constexpr int kExitCertificate = 4;

struct Overrides {
  std::string out_dir;
  std::string allocation;
  std::string fp;
  std::optional<double> dt;
};

ScenarioConfig resolve(const std::string& config, const std::string& preset_name, const Overrides& o) {
  if (config.empty() == preset_name.empty()) {
    throw Error(ErrorCode::ConfigError, "exactly one of --config or --preset is required");
  }
  ScenarioConfig c = config.empty() ? preset(preset_name) : load_scenario(config);
  if (o.allocation == "nullspace") c.sim.allocation = AllocationMode::NullSpace;
  if (o.allocation == "benchmark") c.sim.allocation = AllocationMode::Benchmark;
  if (o.fp == "on") c.sim.recovery.enabled = true;
  if (o.fp == "off") c.sim.recovery.enabled = false;
  if (o.dt) {
    if (!(*o.dt > 0.0)) throw Error(ErrorCode::ConfigError, "--dt must be positive");
    c.sim.dt = *o.dt;
  }
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  os << text;
}

struct RunOutcome {
  SimLog log;
  SummaryMetrics summary;
};

RunOutcome execute(const ScenarioConfig& c) {
  RunOutcome r;
  r.log = run(c.plan, c.sim);
  if (!r.log.records.empty()) r.summary = summarize(r.log);
  return r;
}

int emit(const ScenarioConfig& c, const RunOutcome& r) {
  fs::create_directories(c.output_dir);
  const fs::path base = fs::path(c.output_dir) / c.name;
  write_csv(base.string() + ".csv", r.log);
  const StabilityCertificate cert = certify_gains(c.sim.gains, c.sim.params, c.sim.omega_d_max);
  write_text(base.string() + "_summary.txt", format_run_report(c, r.log, r.summary, cert));
  std::cout << "wrote " << base.string() << ".csv\n";
  std::cout << "wrote " << base.string() << "_summary.txt\n";
  if (r.log.abort_reason) {
    std::cerr << "simulation aborted: " << *r.log.abort_reason << "\n";
    return kExitAbort;
  }
  return kExitOk;
}

int cmd_run(const std::string& config, const std::string& preset_name, const Overrides& o) {
  const ScenarioConfig c = resolve(config, preset_name, o);
  const RunOutcome r = execute(c);
  const int code = emit(c, r);
  std::cout << format_summary(r.summary);
  return code;
}

int cmd_certify(const std::string& config, const std::string& preset_name, const Overrides& o) {
  const ScenarioConfig c = resolve(config, preset_name, o);
  const StabilityCertificate cert = certify_gains(c.sim.gains, c.sim.params, c.sim.omega_d_max);
  std::cout << format_certificate(cert);
  return cert.valid ? kExitOk : kExitCertificate;
}

int cmd_compare(const std::vector<std::string>& configs, const std::vector<std::string>& presets,
                const Overrides& o) {
  std::vector<ScenarioConfig> cs;
  for (const auto& p : configs) cs.push_back(resolve(p, "", o));
  for (const auto& p : presets) cs.push_back(resolve("", p, o));
  if (cs.size() != 2) throw Error(ErrorCode::ConfigError, "compare needs exactly two scenarios");
  require_comparable(cs[0], cs[1]);
  if (cs[0].name == cs[1].name) {
    cs[0].name += "-A";
    cs[1].name += "-B";
  }
  auto fb = std::async(std::launch::async, execute, cs[1]);
  const RunOutcome ra = execute(cs[0]);
  const RunOutcome rb = fb.get();
  int code = emit(cs[0], ra);
  code = std::max(code, emit(cs[1], rb));
  const std::string report = format_comparison(compare_summaries(cs[0].name, ra.summary, cs[1].name, rb.summary));
  const fs::path path = fs::path(cs[0].output_dir) / ("compare_" + cs[0].name + "_vs_" + cs[1].name + ".txt");
  write_text(path, report);
  std::cout << "wrote " << path.string() << "\n" << report;
  return code;
}

int cmd_list_presets() {
  for (const auto& [name, c] : builtin_presets()) {
    std::cout << name << "  (" << to_string(c.sim.allocation) << ", recovery "
              << (c.sim.recovery.enabled ? "on" : "off") << ", " << c.plan.duration() << " s)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrotor flip simulation with null-space thrust allocation"};
  app.require_subcommand(1);

  Overrides o;
  std::string config;
  std::string preset_name;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "scenario YAML file");
    sub->add_option("--preset", preset_name, "built-in scenario name");
    sub->add_option("--out-dir", o.out_dir, "output directory");
    sub->add_option("--allocation", o.allocation, "override allocation")
        ->check(CLI::IsMember({"nullspace", "benchmark"}));
    sub->add_option("--fp", o.fp, "override recovery thrust")->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--dt", o.dt, "override step size [s]");
  };

  auto* run_cmd = app.add_subcommand("run", "simulate a scenario and write CSV and summary");
  add_common(run_cmd);
  auto* cert_cmd = app.add_subcommand("certify", "print the stability certificate of a scenario");
  add_common(cert_cmd);

  auto* cmp_cmd = app.add_subcommand("compare", "run two scenarios and report metric ratios");
  std::vector<std::string> configs;
  std::vector<std::string> presets;
  cmp_cmd->add_option("--config", configs, "scenario YAML file (repeatable)");
  cmp_cmd->add_option("--preset", presets, "built-in scenario name (repeatable)");
  cmp_cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmp_cmd->add_option("--dt", o.dt, "override step size [s]");

  auto* list_cmd = app.add_subcommand("list-presets", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(config, preset_name, o);
    if (*cert_cmd) return cmd_certify(config, preset_name, o);
    if (*cmp_cmd) return cmd_compare(configs, presets, o);
    if (*list_cmd) return cmd_list_presets();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidGains ? kExitCertificate : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
