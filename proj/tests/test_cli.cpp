#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("matchctl-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path f = dir / "config.json";
  std::ofstream(f) << body;
  return f;
}

int run(const std::string& command, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  const std::string cmd = std::string(MATCHCTL_PATH) + " " + command + " --config " + config.string() + " --out " +
                          out.string() + " " + extra + " > " + (out.parent_path() / "stdout.txt").string() +
                          " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, VerifyPasses) {
  const fs::path d = scratch("verify");
  const fs::path cfg = write_config(d, R"({"fixture": "pendulum", "options": {"samples": 20}})");
  EXPECT_EQ(run("verify", cfg, d / "out", "--seed 1"), 0);
  const std::string report = slurp(d / "out" / "report.json");
  EXPECT_NE(report.find("\"pass\": true"), std::string::npos) << report;
}

TEST(Cli, PerturbedLambdaFails) {
  const fs::path d = scratch("perturbed");
  const fs::path cfg =
      write_config(d, R"({"fixture": "pendulum", "options": {"samples": 20, "perturb_lambda2": 0.01}})");
  EXPECT_EQ(run("verify", cfg, d / "out", "--seed 1"), 1);
  const std::string report = slurp(d / "out" / "report.json");
  EXPECT_NE(report.find("\"pass\": false"), std::string::npos);
  EXPECT_NE(report.find("(1,1,1)"), std::string::npos) << report;
}

TEST(Cli, ConfigErrors) {
  const fs::path d = scratch("config");
  EXPECT_EQ(run("verify", write_config(d, R"({"fixture": "cartpole"})"), d / "out", "--seed 1"), 2);
  EXPECT_EQ(run("verify", write_config(d, R"({"fixture": "pendulum"})"), d / "out"), 2);
  EXPECT_EQ(run("verify", write_config(d, R"({"fixture": "pendulum", "options": {"sampels": 3}})"), d / "out",
                "--seed 1"),
            2);
  EXPECT_NE(slurp(d / "stdout.txt").find("sampels"), std::string::npos);
  EXPECT_EQ(run("verify", write_config(d, "{broken"), d / "out", "--seed 1"), 2);
  EXPECT_EQ(run("verify", d / "missing.json", d / "out", "--seed 1"), 2);
  EXPECT_EQ(run("simulate", write_config(d, R"({"command": "verify", "fixture": "pendulum"})"), d / "out",
                "--seed 1"),
            2);
}

TEST(Cli, RankScanNeedsNoSeedAndReportsDrop) {
  const fs::path d = scratch("rankscan");
  const fs::path cfg = write_config(d, R"({"fixture": "seesaw"})");
  EXPECT_EQ(run("rank-scan", cfg, d / "out"), 0);
  const std::string report = slurp(d / "out" / "report.json");
  EXPECT_NE(report.find("\"verdict\": \"drop\""), std::string::npos) << report;
  EXPECT_TRUE(fs::exists(d / "out" / "rank_scan.csv"));
}

TEST(Cli, OutputsAreByteIdentical) {
  const fs::path d = scratch("determinism");
  const fs::path cfg = write_config(d, R"({"fixture": "pendulum", "options": {"horizon": 1.0, "dt": 0.01}})");
  ASSERT_EQ(run("simulate", cfg, d / "a", "--seed 7"), 0);
  ASSERT_EQ(run("simulate", cfg, d / "b", "--seed 7"), 0);
  for (const char* f : {"report.json", "closed_loop.csv", "target.csv"}) {
    const std::string a = slurp(d / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(d / "b" / f)) << f;
  }
  ASSERT_EQ(run("simulate", cfg, d / "c", "--seed 8"), 0);
  EXPECT_NE(slurp(d / "a" / "closed_loop.csv"), slurp(d / "c" / "closed_loop.csv"));
}

TEST(Cli, Sweep) {
  const fs::path d = scratch("sweep");
  const fs::path cfg = write_config(d, R"({"runs": [
    {"command": "verify", "fixture": "pendulum", "options": {"samples": 5}},
    {"command": "rank-scan", "fixture": "seesaw"},
    {"command": "verify", "fixture": {"name": "seesaw", "params": {"a": 0.7}}, "options": {"samples": 5}}
  ], "options": {"seed": 3}})");
  EXPECT_EQ(run("sweep", cfg, d / "out"), 0);
  EXPECT_TRUE(fs::exists(d / "out" / "sweep.json"));
  for (const char* r : {"run-000", "run-001", "run-002"}) EXPECT_TRUE(fs::exists(d / "out" / r / "report.json")) << r;
}
