#include "curvlab/generators.hpp"
#include "curvlab/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace curvlab {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("curvlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the CLI with stdout and stderr captured; returns the exit status.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + CURVLAB_CLI + "\" " + args + " >\"" + path("stdout").string() +
                            "\" 2>\"" + path("stderr").string() + "\"";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  nlohmann::json out_json() const { return nlohmann::json::parse(slurp("stdout")); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

TEST_F(Cli, GenThenAnalyzeIsBitwise) {
  const auto c = path("c.json").string();
  ASSERT_EQ(run("gen circle --n 256 --out " + c), 0) << slurp("stderr");
  ASSERT_EQ(run("analyze " + c), 0) << slurp("stderr");
  const auto j = out_json();
  const auto mem = gen::circle(256);
  EXPECT_NEAR(j.at("total_curvature").get<double>(), kTwoPi, 1e-4);
  EXPECT_EQ(j.at("total_curvature").get<double>(), total_curvature(mem));
  EXPECT_EQ(j.at("length").get<double>(), arclength(mem));
  EXPECT_EQ(io::read_curve(c).coords(), mem.coords());
}

TEST_F(Cli, PlateauThenMonotonicity) {
  const auto c = path("c.json").string();
  const auto m = path("m.obj").string();
  ASSERT_EQ(run("gen circle --n 256 --out " + c), 0);
  ASSERT_EQ(run("plateau " + c + " --topology disk --resolution 64 --out " + m), 0) << slurp("stderr");
  EXPECT_TRUE(out_json().at("converged").get<bool>());
  ASSERT_EQ(run("monotonicity " + m + " --point 0,0,0.2 --radii geometric:0.05:20:50 --check"), 0) << slurp("stderr");
  std::istringstream csv(slurp("stdout"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "r,theta_surface,theta_cone,theta_total");
  std::vector<double> theta;
  while (std::getline(csv, line)) theta.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_EQ(theta.size(), 50u);
  for (std::size_t k = 1; k < theta.size(); ++k) EXPECT_GE(theta[k], theta[k - 1] - 5e-3) << k;
}

TEST_F(Cli, ReportOnShippedFixturesPasses) {
  const auto out = path("report.json").string();
  ASSERT_EQ(run(std::string("report --all \"") + CURVLAB_FIXTURES + "\" --out " + out), 0) << slurp("stderr");
  const auto j = io::read_json(out);
  EXPECT_TRUE(j.at("all_hold").get<bool>());
  EXPECT_GT(j.at("count").get<int>(), 50);
  EXPECT_FALSE(j.at("unknotted_certificates").at("curves/trefoil.json").at("certified").get<bool>());
}

TEST_F(Cli, EstimateIsDeterministicAcrossThreads) {
  const auto c = path("k.json").string();
  ASSERT_EQ(run("gen torus_knot --p 2 --q 3 --n 128 --out " + c), 0);
  ASSERT_EQ(run("estimate " + c + " --dirs 20000 --seed 3"), 0) << slurp("stderr");
  const auto one = slurp("stdout");
  ASSERT_EQ(run("estimate " + c + " --dirs 20000 --seed 3 --threads 4"), 0);
  EXPECT_EQ(slurp("stdout"), one);
  ASSERT_EQ(run("estimate " + c + " --dirs 20000"), 0);
  EXPECT_EQ(out_json().at("seed").get<int>(), 0);
}

TEST_F(Cli, ProjectWritesPolylineAndCsv) {
  const auto c = path("c.json").string();
  ASSERT_EQ(run("gen circle --n 32 --out " + c), 0);
  ASSERT_EQ(run("project " + c + " --point 0,0,0 --csv " + path("arcs.csv").string()), 0) << slurp("stderr");
  const auto j = out_json();
  EXPECT_NEAR(j.at("cone_density").at("density").get<double>(), 1.0, 1e-9);
  EXPECT_TRUE(j.at("verdict").at("holds").get<bool>());
  EXPECT_FALSE(slurp("arcs.csv").empty());
}

TEST_F(Cli, ErrorsAreJsonOnStderr) {
  EXPECT_NE(run("analyze " + path("missing.json").string()), 0);
  auto err = nlohmann::json::parse(slurp("stderr"));
  EXPECT_EQ(err.at("error"), "io_error");

  const auto c = path("c.json").string();
  ASSERT_EQ(run("gen circle --n 16 --out " + c), 0);
  EXPECT_NE(run("project " + c + " --point 1,0,0"), 0);
  err = nlohmann::json::parse(slurp("stderr"));
  EXPECT_TRUE(err.contains("message"));

  EXPECT_NE(run("estimate " + c + " --method crofton"), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp("stderr")).at("error"), "invalid_argument");

  EXPECT_NE(run("gen circle --n banana"), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp("stderr")).at("error"), "usage");
}

}  // namespace
}  // namespace curvlab
