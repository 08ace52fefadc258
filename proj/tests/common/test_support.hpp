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

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsq/builder.hpp"
#include "mbsq/full_model.hpp"
#include "mbsq/instance.hpp"
#include "mbsq/qubo.hpp"

namespace mbsq::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Assignment bits_of(std::uint64_t mask, std::size_t n) {
  Assignment x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
  return x;
}

/// Single grid covered by cells 0..v-1, one beam per cell with the given powers.
inline Instance one_grid(const std::vector<std::int32_t>& powers) {
  const int v = static_cast<int>(powers.size());
  std::vector<int> cover;
  std::vector<std::vector<std::int32_t>> rows;
  for (int j = 0; j < v; ++j) {
    cover.push_back(j);
    rows.push_back({powers[j]});
  }
  return Instance(1, v, 1, {cover}, {rows}, ScalingParams{0.0, 1.0});
}

/// All selections with at most r beams per cell.
inline std::vector<BeamSelection> all_selections(const Instance& instance, int r) {
  std::vector<std::vector<int>> subsets;
  const int n = instance.beams();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) s.push_back(k);
    if (static_cast<int>(s.size()) <= r) subsets.push_back(s);
  }
  std::vector<BeamSelection> out;
  std::vector<std::size_t> pick(instance.cells(), 0);
  while (true) {
    BeamSelection sel(instance.cells());
    for (int j = 0; j < instance.cells(); ++j) sel.beams[j] = subsets[pick[j]];
    out.push_back(sel);
    int j = 0;
    while (j < instance.cells() && ++pick[j] == subsets.size()) pick[j++] = 0;
    if (j == instance.cells()) break;
  }
  return out;
}

/// Sets every slack bit to the value that zeroes its constraint when that
/// value is representable; the minimum-penalty completion for that term.
inline void fit_slack(const BuiltModel& model, Assignment& x) {
  for (const auto& term : model.penalties) {
    if (term.slack_bits.empty()) continue;
    for (auto b : term.slack_bits) x[b] = 0;
    const std::int64_t rest = term.expr.evaluate(x);
    const std::int64_t top = (std::int64_t{1} << term.slack_bits.size()) - 1;
    const std::int64_t value = std::clamp<std::int64_t>(rest, 0, top);
    for (std::size_t t = 0; t < term.slack_bits.size(); ++t) x[term.slack_bits[t]] = (value >> t) & 1;
  }
}

}  // namespace mbsq::testing
