// Copyright 2026 The mbsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "mbsq/json_io.hpp"
#include "mbsq/qubo.hpp"
#include "test_support.hpp"

namespace mbsq {
namespace {

namespace fs = std::filesystem;
using testing::read_text;

const std::string kCli = MBSQ_CLI_PATH;
const std::string kFixtures = MBSQ_FIXTURE_DIR;
const std::string kData = MBSQ_DATA_DIR;

int run(const std::string& args) {
  const std::string command = "'" + kCli + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::path(::testing::TempDir()) /
          ("mbsq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

TEST_F(CliTest, GenerateMatchesLibrary) {
  ASSERT_EQ(run("generate -m 3 -v 2 -n 2 --seed 8 -o " + path("i.json")), 0);
  SyntheticSpec spec;
  spec.m = 3;
  spec.v = 2;
  spec.n = 2;
  spec.seed = 8;
  EXPECT_EQ(instance_from_json(read_text(path("i.json"))), generate_synthetic(spec));
}

TEST_F(CliTest, BuildReproducesFixture) {
  ASSERT_EQ(run("build -i " + kFixtures + "/full_single.json --model full --delta1-dbm 3 "
                "--delta2-dbm 0 -r 1 --lambda 100 -o " + path("q.txt") + " --registry " +
                path("r.txt")),
            0);
  EXPECT_EQ(read_text(path("q.txt")), read_text(kFixtures + "/full_single.qubo"));
  EXPECT_EQ(read_text(path("r.txt")), read_text(kFixtures + "/full_single.registry"));
}

TEST_F(CliTest, SolveWritesSolutionAndTrajectory) {
  ASSERT_EQ(run("solve -i " + kFixtures + "/seed42.json --model simplified --delta1-dbm -134 "
                "--solver cim --cim-roundtrips 200 -o " + path("s.json") + " --trajectory " +
                path("t.csv")),
            0);
  const auto doc = nlohmann::json::parse(read_text(path("s.json")));
  EXPECT_TRUE(doc["feasible"].get<bool>());
  EXPECT_EQ(doc["per_grid"].size(), 5u);
  const auto csv = read_text(path("t.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
}

TEST_F(CliTest, ExactSolveOfSmallFullModel) {
  ASSERT_EQ(run("solve -i " + kFixtures + "/simplified_single.json --model full --delta1-dbm 5 "
                "--delta2-dbm 0 -r 1 --solver exact -o " + path("s.json")),
            0);
  const auto doc = nlohmann::json::parse(read_text(path("s.json")));
  EXPECT_EQ(doc["count"], 1);
  EXPECT_NEAR(doc["penalty_residual"].get<double>(), 0.0, 1e-9);
}

TEST_F(CliTest, RatioFromTable) {
  ASSERT_EQ(run("ratio --table " + kData + "/reference_benchmark.csv"), 0);
  ASSERT_EQ(run("ratio --values 5 0.004096 2.07 0.134"), 0);
  EXPECT_EQ(run("ratio --values 5 0 2.07 0.134"), 1);
}

TEST_F(CliTest, BenchWritesReportAndTable) {
  ASSERT_EQ(run("bench --grids 2 --cells 2 --beams 2 --delta1-dbm -135 -r 1 --repetitions 2 "
                "--solvers cim,sa --cim-roundtrips 50 --report " + path("b.json") + " --table " +
                path("b.csv")),
            0);
  const auto report = nlohmann::json::parse(read_text(path("b.json")));
  EXPECT_EQ(report["entries"].size(), 2u);
  EXPECT_EQ(read_text(path("b.csv")).substr(0, 31), "instance,bits,solver,time,value");
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("solve"), 1);
  EXPECT_EQ(run("solve -i " + path("missing.json") + " --delta1-dbm -130"), 1);
  EXPECT_EQ(run("solve -i " + kFixtures + "/seed42.json --delta1-dbm -130 --solver qaoa"), 1);
  EXPECT_EQ(run("build -i " + kFixtures + "/seed42.json --delta1-dbm 500"), 1);
  EXPECT_EQ(run("--help"), 0);
}

}  // namespace
}  // namespace mbsq
