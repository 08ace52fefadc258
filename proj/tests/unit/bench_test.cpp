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

#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mbsq/bench.hpp"
#include "mbsq/errors.hpp"
#include "mbsq/json_io.hpp"
#include "test_support.hpp"

namespace mbsq {
namespace {

using testing::read_text;

const std::string kFixtures = MBSQ_FIXTURE_DIR;
const std::string kData = MBSQ_DATA_DIR;

TEST(EfficiencyRatio, PublishedRowExample) {
  EXPECT_NEAR(efficiency_ratio(5.0, 0.004096, 2.07, 0.134), 79.02, 0.01);
  EXPECT_DOUBLE_EQ(efficiency_ratio(2.0, 1.0, 2.0, 1.0), 1.0);
}

TEST(EfficiencyRatio, ScaleInvariance) {
  for (double s : {0.001, 3.0, 1e6}) {
    EXPECT_NEAR(efficiency_ratio(3.0, 0.5, 4.0, 2.0),
                efficiency_ratio(3.0 * s, 0.5, 4.0 * s, 2.0), 1e-9);
    EXPECT_NEAR(efficiency_ratio(3.0, 0.5, 4.0, 2.0),
                efficiency_ratio(3.0, 0.5 * s, 4.0, 2.0 * s), 1e-9);
  }
}

TEST(EfficiencyRatio, RejectsDegenerateInputs) {
  EXPECT_THROW(efficiency_ratio(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(efficiency_ratio(1.0, 1.0, 1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(efficiency_ratio(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST(ReferenceTable, RatiosMatchIndependentOracle) {
  std::istringstream in(read_text(kData + "/reference_benchmark.csv"));
  const auto rows = read_table_csv(in);
  ASSERT_EQ(rows.size(), 18u);
  const auto ratios = compute_ratios(rows, "cim");
  const auto expected =
      nlohmann::json::parse(read_text(kFixtures + "/oracle_values.json"))["gamma"];
  ASSERT_EQ(ratios.size(), 2u);
  for (const auto& summary : ratios) {
    const auto& e = expected[summary.baseline];
    ASSERT_EQ(summary.rows.size(), e["rows"].size());
    for (std::size_t i = 0; i < summary.rows.size(); ++i)
      EXPECT_NEAR(*summary.rows[i].gamma, e["rows"][i].get<double>(), 1e-9);
    EXPECT_NEAR(*summary.mean, e["mean"].get<double>(), 1e-9);
  }
  EXPECT_NEAR(*ratios[0].rows[0].gamma, 79.02, 0.01);
}

TEST(ComputeRatios, ZeroBaselineIsUndefined) {
  const std::vector<TableRow> rows{{"a", 1, "cim", 1.0, 2.0}, {"a", 1, "sa", 1.0, 0.0},
                                   {"b", 1, "cim", 1.0, 2.0}, {"b", 1, "sa", 2.0, 1.0}};
  const auto ratios = compute_ratios(rows);
  ASSERT_EQ(ratios.size(), 1u);
  EXPECT_FALSE(ratios[0].rows[0].gamma.has_value());
  EXPECT_DOUBLE_EQ(*ratios[0].rows[1].gamma, 4.0);
  EXPECT_DOUBLE_EQ(*ratios[0].mean, 4.0);
}

TEST(TableCsv, RoundTrip) {
  const std::vector<TableRow> rows{{"m=5", 60, "cim", 0.004096, 3.0},
                                   {"m=5", 60, "sa", 1.0 / 3.0, 2.75}};
  std::stringstream s;
  write_table_csv(rows, s);
  const auto back = read_table_csv(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].time_seconds, 1.0 / 3.0);
  EXPECT_EQ(back[0].instance, "m=5");
  EXPECT_EQ(back[0].bits, 60);
}

TEST(TableCsv, Errors) {
  std::istringstream bad("instance,bits,solver,time,value\na,1,cim,x,2\n");
  try {
    read_table_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream missing("");
  EXPECT_THROW(read_table_csv(missing), ParseError);
}

std::vector<BenchInstance> tiny_instances() {
  SyntheticSpec spec;
  spec.m = 3;
  spec.v = 2;
  spec.n = 2;
  spec.seed = 5;
  const auto inst = generate_synthetic(spec);
  return {{"tiny", inst, ModelKind::kSimplified, {50, 0, 1, {}}}};
}

TEST(RunBenchmark, ExactRepetitionMatchesOracle) {
  const auto instances = tiny_instances();
  SolverSpec exact;
  exact.kind = SolverKind::kExact;
  const auto result = run_benchmark(instances, {exact}, 1, 1);
  ASSERT_EQ(result.entries.size(), 1u);
  const auto oracle = brute_force_selection(instances[0].instance, instances[0].params);
  EXPECT_EQ(result.entries[0].objectives, std::vector<int>{oracle.count});
  EXPECT_GT(result.entries[0].times_seconds[0], 0.0);
  EXPECT_EQ(result.notes.size(), 2u);
}

TEST(RunBenchmark, DeterministicApartFromTiming) {
  std::vector<SolverSpec> solvers(3);
  solvers[0].kind = SolverKind::kCim;
  solvers[0].cim.roundtrips = 100;
  solvers[1].kind = SolverKind::kSa;
  solvers[1].sa.sweeps = 50;
  solvers[2].kind = SolverKind::kTabu;
  solvers[2].tabu.max_iterations = 100;
  auto a = run_benchmark(tiny_instances(), solvers, 3, 9);
  auto b = run_benchmark(tiny_instances(), solvers, 3, 9);
  ASSERT_EQ(a.entries.size(), 3u);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].objectives, b.entries[i].objectives);
    EXPECT_EQ(a.entries[i].bits, a.entries[0].bits);
  }
  EXPECT_EQ(a.ratios.size(), 2u);
  EXPECT_EQ(a.ratios[0].baseline, "sa");
}

TEST(RunBenchmark, ReportJsonRoundTrip) {
  SolverSpec cim;
  cim.kind = SolverKind::kCim;
  cim.cim.roundtrips = 50;
  SolverSpec sa;
  const auto result = run_benchmark(tiny_instances(), {cim, sa}, 2, 4);
  EXPECT_EQ(bench_result_from_json(bench_result_to_json(result)), result);
  EXPECT_THROW(bench_result_from_json("{\"repetitions\": 1}"), ParseError);
}

TEST(RunBenchmark, RejectsNonPositiveRepetitions) {
  EXPECT_THROW(run_benchmark(tiny_instances(), {SolverSpec{}}, 0, 1), std::invalid_argument);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 4; ++i)
    for (std::uint64_t s = 0; s < 4; ++s)
      for (std::uint64_t r = 0; r < 16; ++r) seeds.insert(derive_seed(1, i, s, r));
  EXPECT_EQ(seeds.size(), 256u);
  EXPECT_EQ(derive_seed(1, 2, 3, 4), derive_seed(1, 2, 3, 4));
}

TEST(Kinds, ParseAndPrint) {
  for (auto k : {SolverKind::kExact, SolverKind::kSa, SolverKind::kTabu, SolverKind::kCim})
    EXPECT_EQ(parse_solver_kind(to_string(k)), k);
  EXPECT_EQ(parse_model_kind("full"), ModelKind::kFull);
  EXPECT_THROW(parse_model_kind("tiny"), std::invalid_argument);
  EXPECT_THROW(parse_solver_kind("qaoa"), std::invalid_argument);
}

}  // namespace
}  // namespace mbsq
