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

#include <random>
#include <sstream>

#include "mbsq/instance.hpp"

namespace mbsq {
namespace {

std::vector<RsrpRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_records(in);
}

TEST(ParseRecords, SingleRow) {
  const auto records = parse("grid_id,cell_id,beam_id,rsrp_dbm\n0,0,0,-85.5");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0], (RsrpRecord{0, 0, 0, -85.5}));
}

TEST(ParseRecords, EmptyBody) {
  EXPECT_TRUE(parse("grid_id,cell_id,beam_id,rsrp_dbm\n").empty());
}

TEST(ParseRecords, MalformedRowReportsLine) {
  try {
    parse("grid_id,cell_id,beam_id,rsrp_dbm\n0,0,0,abc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseRecords, DuplicateTripleRejected) {
  EXPECT_THROW(parse("grid_id,cell_id,beam_id,rsrp_dbm\n0,0,0,-1\n0,0,0,-2\n"), ParseError);
}

TEST(ParseRecords, MissingHeaderRejected) {
  EXPECT_THROW(parse("0,0,0,-1\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(ParseRecords, KeepsRowOrder) {
  const auto records = parse("grid_id,cell_id,beam_id,rsrp_dbm\n2,0,0,-1\n0,1,0,-2\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].grid_id, 2u);
  EXPECT_EQ(records[1].cell_id, 1u);
}

TEST(BuildInstance, AutoScalingShiftsMinimumToZero) {
  const auto inst = build_instance({{0, 0, 0, -85.0}, {0, 0, 1, -90.0}});
  EXPECT_EQ(inst.grids(), 1);
  EXPECT_EQ(inst.cells(), 1);
  EXPECT_EQ(inst.beams(), 2);
  EXPECT_EQ(inst.rsrp(0, 0, 0), 50);
  EXPECT_EQ(inst.rsrp(0, 0, 1), 0);
  EXPECT_EQ(inst.big_m(), 50);
  EXPECT_DOUBLE_EQ(inst.scaling().offset, 90.0);
  EXPECT_DOUBLE_EQ(inst.scaling().scale, 10.0);
}

TEST(BuildInstance, SingleRecordHasZeroMaximum) {
  EXPECT_EQ(build_instance({{0, 0, 0, -80.0}}).big_m(), 0);
}

TEST(BuildInstance, ReindexesIdsDensely) {
  const auto inst = build_instance({{0, 3, 0, -80.0}, {0, 7, 0, -81.0}});
  EXPECT_EQ(inst.cells(), 2);
  EXPECT_EQ(inst.coverage(0), (std::vector<int>{0, 1}));
}

TEST(BuildInstance, MissingEntriesStayAbsent) {
  const auto inst = build_instance({{0, 0, 0, -80.0}, {0, 0, 1, -90.0}, {1, 0, 0, -85.0}});
  EXPECT_EQ(inst.beams(), 2);
  EXPECT_FALSE(inst.rsrp(1, 0, 1).has_value());
  EXPECT_EQ(inst.defined_entries(), 3u);
}

TEST(BuildInstance, RejectsEmptyInputAndNegativeScaling) {
  EXPECT_THROW(build_instance({}), std::invalid_argument);
  EXPECT_THROW(build_instance({{0, 0, 0, -80.0}}, ScalingParams{50.0, 10.0}),
               std::invalid_argument);
}

TEST(BuildInstance, CsvRoundTripIsLossless) {
  SyntheticSpec spec;
  spec.m = 6;
  spec.seed = 11;
  const auto inst = generate_synthetic(spec);
  std::stringstream csv;
  write_records_csv(inst, csv);
  const auto again = build_instance(parse_records(csv), inst.scaling());
  EXPECT_EQ(again, inst);
}

TEST(Binarize, ThresholdExamples) {
  const auto inst = build_instance({{0, 0, 0, -85.0}, {0, 0, 1, -90.0}});
  EXPECT_EQ(binarize(inst, 10)[0][0], (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(binarize(inst, 0)[0][0], (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(binarize(inst, inst.big_m() + 1)[0][0], (std::vector<std::uint8_t>{0, 0}));
}

TEST(Binarize, MonotoneInThreshold) {
  SyntheticSpec spec;
  spec.seed = 5;
  const auto inst = generate_synthetic(spec);
  for (std::int64_t lo = 0; lo <= inst.big_m(); lo += 7) {
    const auto a = binarize(inst, lo);
    const auto b = binarize(inst, lo + 5);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t s = 0; s < a[i].size(); ++s)
        for (std::size_t k = 0; k < a[i][s].size(); ++k) EXPECT_GE(a[i][s][k], b[i][s][k]);
  }
}

TEST(GenerateSynthetic, DeterministicForSeed) {
  SyntheticSpec spec;
  spec.min_cells_per_grid = spec.max_cells_per_grid = 5;
  EXPECT_EQ(generate_synthetic(spec), generate_synthetic(spec));
  spec.seed = 2;
  SyntheticSpec other = spec;
  other.seed = 3;
  EXPECT_NE(generate_synthetic(spec), generate_synthetic(other));
}

TEST(GenerateSynthetic, FiveCellsFiveBeamsShape) {
  const auto inst = generate_synthetic(SyntheticSpec{});
  EXPECT_EQ(inst.grids(), 5);
  EXPECT_EQ(inst.cells(), 5);
  EXPECT_EQ(inst.beams(), 5);
  for (int i = 0; i < inst.grids(); ++i) EXPECT_EQ(inst.coverage(i).size(), 2u);
}

TEST(GenerateSynthetic, DegenerateRange) {
  SyntheticSpec spec;
  spec.rsrp_min = spec.rsrp_max = 7;
  const auto inst = generate_synthetic(spec);
  EXPECT_EQ(inst.big_m(), 7);
  for (int i = 0; i < inst.grids(); ++i)
    for (std::size_t s = 0; s < inst.coverage(i).size(); ++s)
      for (int k = 0; k < inst.beams(); ++k) EXPECT_EQ(inst.rsrp(i, static_cast<int>(s), k), 7);
}

TEST(GenerateSynthetic, RejectsBadCoverage) {
  SyntheticSpec spec;
  spec.max_cells_per_grid = 6;
  EXPECT_THROW(generate_synthetic(spec), std::invalid_argument);
  spec.max_cells_per_grid = 2;
  spec.min_cells_per_grid = 1;
  EXPECT_THROW(generate_synthetic(spec), std::invalid_argument);
  spec.allow_single_cell = true;
  EXPECT_NO_THROW(generate_synthetic(spec));
}

TEST(Instance, BigMIsMaximumOfDefinedEntries) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SyntheticSpec spec;
    spec.m = 1 + static_cast<int>(rng() % 6);
    spec.v = 2 + static_cast<int>(rng() % 3);
    spec.n = 1 + static_cast<int>(rng() % 4);
    spec.max_cells_per_grid = spec.v;
    spec.seed = rng();
    const auto inst = generate_synthetic(spec);
    std::int32_t seen = 0;
    for (int i = 0; i < inst.grids(); ++i)
      for (std::size_t s = 0; s < inst.coverage(i).size(); ++s)
        for (int k = 0; k < inst.beams(); ++k)
          seen = std::max(seen, inst.rsrp(i, static_cast<int>(s), k).value_or(0));
    EXPECT_EQ(inst.big_m(), seen);
  }
}

TEST(Instance, RejectsBrokenInvariants) {
  EXPECT_THROW(Instance(1, 1, 1, {{}}, {{}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(1, 1, 1, {{0}}, {{{-5}}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(1, 1, 1, {{2}}, {{{5}}}, {}), std::invalid_argument);
}

TEST(ScalingParams, ConvertsBothWays) {
  const ScalingParams s{140.0, 10.0};
  EXPECT_EQ(s.to_scaled(-131.5), 85);
  EXPECT_DOUBLE_EQ(s.to_dbm(85), -131.5);
  EXPECT_EQ(s.gap_to_scaled(1.5), 15);
}

}  // namespace
}  // namespace mbsq
