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

#include <optional>
#include <string>

#include "mbsq/bench.hpp"
#include "mbsq/instance.hpp"
#include "mbsq/postprocess.hpp"

namespace mbsq {

/// {m, v, n, coverage, rsrp: [[grid, cell, beam, scaled]], big_m, scaling}
std::string instance_to_json(const Instance& instance, int indent = 2);
/// Throws ParseError on malformed documents and std::invalid_argument when
/// the decoded instance violates its invariants.
Instance instance_from_json(const std::string& text);

/// {selection, count, per_grid: [{grid, a, b, z, failure}], energy,
///  penalty_residual, source_rank}
std::string solution_to_json(const Solution& solution, std::optional<double> penalty_residual,
                             int indent = 2);

std::string bench_result_to_json(const BenchResult& result, int indent = 2);
BenchResult bench_result_from_json(const std::string& text);

}  // namespace mbsq
