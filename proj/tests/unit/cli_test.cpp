#include "test_util.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const int status = std::system((std::string(QUADFLIP_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("quadflip_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST(Cli, ListPresets) { EXPECT_EQ(cli("list-presets"), 0); }

TEST(Cli, RunPresetWritesArtifacts) {
  const fs::path dir = scratch("run");
  ASSERT_EQ(cli("run --preset flip-nullspace --out-dir " + dir.string()), 0);
  const std::string summary = slurp(dir / "flip-nullspace_summary.txt");
  EXPECT_NE(summary.find("saturation steps  0"), std::string::npos) << summary;
  EXPECT_NE(summary.find("valid             yes"), std::string::npos);
  const std::string csv = slurp(dir / "flip-nullspace.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10002);
}

TEST(Cli, HoverSummary) {
  const fs::path dir = scratch("hover");
  ASSERT_EQ(cli("run --preset hover-10s --out-dir " + dir.string()), 0);
  const quadflip::SummaryMetrics m = quadflip::summarize(quadflip::read_csv((dir / "hover-10s.csv").string()));
  EXPECT_LT(m.max_e_x, 1e-6);
}

TEST(Cli, ConfigErrorExitCode) {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.yaml") << "version: 1\nquad:\n  mass: -1\nplan: []\n";
  EXPECT_EQ(cli("run --config " + (dir / "bad.yaml").string()), 2);
  EXPECT_EQ(cli("run --preset missing"), 2);
  EXPECT_EQ(cli("run"), 2);
  EXPECT_EQ(cli("run --preset hover-10s --allocation other"), 2);
}

TEST(Cli, CertifyExitCodes) {
  const fs::path dir = scratch("cert");
  EXPECT_EQ(cli("certify --preset flip-nullspace"), 0);
  std::ofstream(dir / "weak.yaml") << "version: 1\n"
                                      "gains:\n  k_R: [6.516e-5, 7.056e-5, 9.828e-5]\n"
                                      "plan:\n  - {mode: position, start: 0, end: 1, waypoints: [{t: 0, x: [0, 0, 0]}]}\n";
  EXPECT_EQ(cli("certify --config " + (dir / "weak.yaml").string()), 4);
}

TEST(Cli, AbortExitCode) {
  const fs::path dir = scratch("abort");
  std::ofstream(dir / "inverted.yaml") << "version: 1\n"
                                          "initial:\n  R: [[1, 0, 0], [0, -1, 0], [0, 0, -1]]\n"
                                          "plan:\n  - {mode: attitude, start: 0, end: 1, hold: [0, 0, 0],"
                                          " flip: {angle: 0.0}}\n";
  EXPECT_EQ(cli("run --config " + (dir / "inverted.yaml").string() + " --out-dir " + dir.string()), 3);
}

TEST(Cli, CompareRejectsMismatch) {
  EXPECT_EQ(cli("compare --preset flip-nullspace --preset hover-10s"), 2);
}

TEST(Cli, CompareIdenticalGivesUnitRatios) {
  const fs::path dir = scratch("cmp");
  ASSERT_EQ(cli("compare --preset hover-10s --preset hover-10s --out-dir " + dir.string()), 0);
  const std::string report = slurp(dir / "compare_hover-10s-A_vs_hover-10s-B.txt");
  std::istringstream is(report);
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.rfind("  max", 0) == 0 || line.rfind("  saturation", 0) == 0) {
      ++rows;
      EXPECT_EQ(line.substr(line.find_last_of(' ') + 1), "1") << line;
    }
  }
  EXPECT_GE(rows, 4);
}
