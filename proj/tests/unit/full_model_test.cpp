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
#include <random>
#include <sstream>

#include "json.hpp"
#include "mbsq/full_model.hpp"
#include "mbsq/json_io.hpp"
#include "mbsq/solvers.hpp"
#include "test_support.hpp"

namespace mbsq {
namespace {

using testing::all_selections;
using testing::fit_slack;
using testing::one_grid;
using testing::read_text;

const std::string kFixtures = MBSQ_FIXTURE_DIR;

nlohmann::json oracle_values() {
  return nlohmann::json::parse(read_text(kFixtures + "/oracle_values.json"));
}

BeamSelection all_first_beams(int cells) {
  BeamSelection s(cells);
  for (auto& b : s.beams) b = {0};
  return s;
}

TEST(ExactObjective, GapAboveThresholdSatisfies) {
  const auto inst = one_grid({30, 10});
  const auto r = exact_objective(inst, all_first_beams(2), 20, 15);
  EXPECT_EQ(r.count, 1);
  EXPECT_EQ(r.grids[0].a, 30);
  EXPECT_EQ(r.grids[0].b, 10);
  EXPECT_EQ(r.grids[0].failure, GridFailure::kNone);
}

TEST(ExactObjective, GapBelowThresholdFails) {
  const auto r = exact_objective(one_grid({30, 20}), all_first_beams(2), 20, 15);
  EXPECT_EQ(r.count, 0);
  EXPECT_EQ(r.grids[0].failure, GridFailure::kInterference);
}

TEST(ExactObjective, CoverageFailure) {
  const auto r = exact_objective(one_grid({15, 0}), all_first_beams(2), 20, 0);
  EXPECT_EQ(r.count, 0);
  EXPECT_EQ(r.grids[0].failure, GridFailure::kCoverage);
}

TEST(ExactObjective, TiedMaximaCountTwice) {
  const auto r = exact_objective(one_grid({30, 30}), all_first_beams(2), 10, 1);
  EXPECT_EQ(r.grids[0].b, 30);
  EXPECT_EQ(r.count, 0);
  EXPECT_EQ(exact_objective(one_grid({30, 30}), all_first_beams(2), 10, 0).count, 1);
}

TEST(ExactObjective, SingleCellHasNoRunnerUp) {
  const auto r = exact_objective(one_grid({25}), all_first_beams(1), 20, 90);
  EXPECT_FALSE(r.grids[0].b.has_value());
  EXPECT_EQ(r.count, 1);
}

TEST(ExactObjective, UnselectedAndAbsentBeamsContributeZero) {
  const Instance inst(1, 2, 2, {{0, 1}}, {{{40, Instance::kAbsent}, {5, 50}}}, {0.0, 1.0});
  BeamSelection sel(2);
  sel.beams[0] = {1};
  sel.beams[1] = {0};
  const auto r = exact_objective(inst, sel, 1, 0);
  EXPECT_EQ(r.grids[0].c, (std::vector<std::int64_t>{0, 5}));
  EXPECT_EQ(r.grids[0].a, 5);
  BeamSelection bad(2);
  bad.beams[0] = {2};
  EXPECT_THROW(exact_objective(inst, bad, 1, 0), std::out_of_range);
}

TEST(FullModelParams, Validation) {
  const auto inst = one_grid({30, 10});
  EXPECT_THROW(build_full_model(inst, {31, 0, 1, {}}), std::invalid_argument);
  EXPECT_THROW(build_full_model(inst, {0, -1, 1, {}}), std::invalid_argument);
  EXPECT_THROW(build_full_model(inst, {0, 0, 2, {}}), std::invalid_argument);
  EXPECT_THROW(build_full_model(inst, {0, 0, 1, 0.0}), std::invalid_argument);
  EXPECT_DOUBLE_EQ((FullModelParams{0, 0, 1, {}}).lambda_for(inst), 2.0);
}

TEST(FullModel, SingleGridMatchesIndependentFixture) {
  const auto inst = instance_from_json(read_text(kFixtures + "/full_single.json"));
  const auto model = build_full_model(inst, {3, 0, 1, 100.0});
  std::istringstream text(read_text(kFixtures + "/full_single.qubo"));
  EXPECT_EQ(read_qubo(text), model.qubo());

  const auto expected = oracle_values()["full_single"];
  const auto pool = solve_by_elimination(model.qubo());
  EXPECT_NEAR(pool.best().energy, expected["min_energy"].get<double>(), 1e-9);
  EXPECT_EQ(pool.best().bits, expected["argmin"].get<Assignment>());
  EXPECT_EQ(pool.best().bits[model.registry().at({VarFamily::kX, {0, 0}})], 1);

  const auto decoded = decode_full(pool.best().bits, model, inst);
  EXPECT_EQ(decoded.objective.count, 1);
  EXPECT_NEAR(decoded.penalty_residual, 0.0, 1e-9);
}

TEST(FullModel, LayoutCoversEveryFamily) {
  const auto inst = one_grid({30, 10});
  const auto model = build_full_model(inst, {20, 15, 1, {}});
  const auto& reg = model.registry();
  EXPECT_EQ(reg.count(VarFamily::kX), 2u);
  EXPECT_EQ(reg.count(VarFamily::kZ), 1u);
  EXPECT_EQ(reg.count(VarFamily::kD), 2u);
  EXPECT_EQ(reg.count(VarFamily::kP), 2u);
  EXPECT_EQ(reg.count(VarFamily::kQ), 2u);
  EXPECT_EQ(model.layout.value_bits, bits_for(inst.big_m()));
  EXPECT_EQ(reg.count(VarFamily::kABit), static_cast<std::size_t>(model.layout.value_bits));
  EXPECT_EQ(reg.count(VarFamily::kBBit), static_cast<std::size_t>(model.layout.value_bits));
}

TEST(FullModel, SingleCellGridHasNoRunnerUpVariables) {
  const auto model = build_full_model(one_grid({25}), {20, 5, 1, {}});
  EXPECT_EQ(model.registry().count(VarFamily::kQ), 0u);
  EXPECT_EQ(model.registry().count(VarFamily::kBBit), 0u);
  EXPECT_FALSE(model.layout.b[0].has_value());
}

TEST(FullModel, SingleCellGridIgnoresGapThreshold) {
  // Nothing selected: a = 0 meets delta1 = 0 and there is no runner-up.
  const auto inst = one_grid({25});
  const auto model = build_full_model(inst, {0, 1, 1, {}});
  const auto x = full_witness(model, inst, BeamSelection(1));
  EXPECT_EQ(x[model.layout.z[0]], 1);
  EXPECT_NEAR(model.model.penalty(x), 0.0, 1e-12);
  EXPECT_NEAR(solve_exact(model.qubo()).best().energy, -1.0, 1e-9);
}

struct WitnessCase {
  Instance instance;
  FullModelParams params;
};

std::vector<WitnessCase> witness_cases() {
  std::vector<WitnessCase> out;
  out.push_back({one_grid({30, 10}), {20, 15, 1, {}}});
  out.push_back({one_grid({30, 20}), {20, 15, 1, 3.0}});
  out.push_back({one_grid({30, 30, 5}), {10, 0, 1, {}}});
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    SyntheticSpec spec;
    spec.m = 2 + static_cast<int>(seed % 2);
    spec.v = 2;
    spec.n = 2;
    spec.min_cells_per_grid = 1;
    spec.max_cells_per_grid = 2;
    spec.allow_single_cell = true;
    spec.rsrp_max = 12;
    spec.seed = seed;
    const auto inst = generate_synthetic(spec);
    const std::int64_t d1 = static_cast<std::int64_t>(seed * 3) % (inst.big_m() + 1);
    const std::int64_t d2 = static_cast<std::int64_t>(seed) % (inst.big_m() + 1);
    out.push_back({inst, {d1, d2, 1 + static_cast<int>(seed % 2), {}}});
  }
  return out;
}

TEST(FullWitness, EncodesEverySelectionWithZeroPenalty) {
  for (const auto& c : witness_cases()) {
    const auto model = build_full_model(c.instance, c.params);
    for (const auto& sel : all_selections(c.instance, c.params.r)) {
      const auto x = full_witness(model, c.instance, sel);
      const auto d = decode_full(x, model, c.instance);
      EXPECT_EQ(d.selection, sel);
      EXPECT_NEAR(d.penalty_residual, 0.0, 1e-9);
      EXPECT_NEAR(model.model.penalty(x), 0.0, 1e-9);
      EXPECT_NEAR(d.energy, -exact_objective(c.instance, sel, c.params.delta1, c.params.delta2).count,
                  1e-9);
    }
  }
}

TEST(FullWitness, AuxiliaryPerturbationsArePenalized) {
  for (const auto& c : witness_cases()) {
    const auto model = build_full_model(c.instance, c.params);
    const auto& reg = model.registry();
    for (const auto& sel : all_selections(c.instance, c.params.r)) {
      const auto x = full_witness(model, c.instance, sel);
      for (std::size_t idx = 0; idx < x.size(); ++idx) {
        const auto family = reg.name(idx).family;
        if (family == VarFamily::kX || family == VarFamily::kZ || family == VarFamily::kSlack)
          continue;
        auto y = x;
        y[idx] ^= 1;
        fit_slack(model.model, y);
        EXPECT_GT(model.model.penalty(y), 0.5) << reg.name(idx).to_string();
      }
    }
  }
}

TEST(FullWitness, UnearnedSatisfactionIsPenalized) {
  const auto inst = one_grid({30, 20});
  const auto model = build_full_model(inst, {20, 15, 1, {}});
  auto x = full_witness(model, inst, all_first_beams(2));
  ASSERT_EQ(x[model.layout.z[0]], 0);
  x[model.layout.z[0]] = 1;
  fit_slack(model.model, x);
  EXPECT_GT(decode_full(x, model, inst).penalty_residual, 0.5);
}

TEST(FullModel, ExactMinimumMatchesBruteForce) {
  for (const auto& c : witness_cases()) {
    const auto model = build_full_model(c.instance, c.params);
    if (elimination_width(model.qubo()) > 20) continue;
    const auto oracle = brute_force_selection(c.instance, c.params);
    const auto pool = solve_exact(model.qubo());
    EXPECT_NEAR(pool.best().energy, -oracle.count, 1e-6);
    const auto d = decode_full(pool.best().bits, model, c.instance);
    EXPECT_EQ(d.objective.count, oracle.count);
  }
}

TEST(FullModel, EnergyIsNondecreasingInLambda) {
  const auto c = witness_cases()[3];
  const auto low = build_full_model(c.instance, {c.params.delta1, c.params.delta2, c.params.r, 1.0});
  const auto high = build_full_model(c.instance, {c.params.delta1, c.params.delta2, c.params.r, 7.0});
  ASSERT_EQ(low.registry(), high.registry());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Assignment x(low.registry().size());
    for (auto& b : x) b = rng() & 1;
    const double pl = low.model.penalty(x);
    EXPECT_LE(energy(low.qubo(), x), energy(high.qubo(), x) + 1e-9);
    EXPECT_NEAR(energy(high.qubo(), x) - energy(low.qubo(), x), 6.0 * pl, 1e-6);
  }
}

TEST(Feasibility, ReportsPerCellBudget) {
  const Instance inst(1, 2, 3, {{0, 1}}, {{{10, 20, 30}, {1, 2, 3}}}, {0.0, 1.0});
  BeamSelection sel(2);
  sel.beams[0] = {0, 2};
  sel.beams[1] = {1};
  const auto report = check_feasibility_full(inst, sel, {5, 0, 1, {}});
  EXPECT_EQ(report.beams_per_cell, (std::vector<int>{2, 1}));
  EXPECT_EQ(report.cell_ok, (std::vector<bool>{false, true}));
  EXPECT_FALSE(report.cardinality_ok);
  EXPECT_EQ(report.objective.count, 1);
  EXPECT_TRUE(check_feasibility_full(inst, sel, {5, 0, 2, {}}).cardinality_ok);
}

TEST(BruteForce, Seed42MatchesIndependentOracle) {
  const auto expected = oracle_values()["seed42"];
  const auto inst = instance_from_json(read_text(kFixtures + "/seed42.json"));
  EXPECT_EQ(inst, generate_synthetic({5, 2, 3, 2, 2, 0, 100, 42}));
  const FullModelParams params{expected["delta1"].get<std::int64_t>(),
                               expected["delta2"].get<std::int64_t>(), expected["r"].get<int>(), {}};
  EXPECT_EQ(brute_force_selection(inst, params).count, expected["count"].get<int>());
}

TEST(BruteForce, SmallInstancesMatchIndependentOracle) {
  const auto cases = oracle_values()["small"];
  ASSERT_EQ(cases.size(), 12u);
  for (const auto& c : cases) {
    const auto inst = instance_from_json(read_text(kFixtures + "/" + c["file"].get<std::string>()));
    const FullModelParams params{c["delta1"].get<std::int64_t>(), c["delta2"].get<std::int64_t>(),
                                 c["r"].get<int>(), {}};
    const auto result = brute_force_selection(inst, params);
    EXPECT_EQ(result.count, c["count"].get<int>()) << c["file"];
    EXPECT_EQ(exact_objective(inst, result.best, params.delta1, params.delta2).count, result.count);
  }
}

TEST(BruteForce, TiesResolveToSmallestSelection) {
  const auto result = brute_force_selection(one_grid({30, 10}), {0, 0, 1, {}});
  EXPECT_EQ(result.count, 1);
  EXPECT_EQ(result.best, BeamSelection(2));
}

TEST(BruteForce, RejectsHugeSearchSpace) {
  SyntheticSpec spec;
  spec.m = 3;
  spec.v = 12;
  spec.n = 8;
  EXPECT_THROW(brute_force_selection(generate_synthetic(spec), {10, 0, 4, {}}),
               std::invalid_argument);
}

}  // namespace
}  // namespace mbsq
