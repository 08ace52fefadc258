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

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mbsq/builder.hpp"
#include "mbsq/full_model.hpp"
#include "mbsq/instance.hpp"
#include "mbsq/postprocess.hpp"
#include "mbsq/simplified_model.hpp"
#include "mbsq/solvers.hpp"

namespace mbsq {

/// γ = (f_cim / t_cim) / (f_base / t_base). Throws std::invalid_argument
/// when a time is not positive or f_base is zero.
double efficiency_ratio(double f_cim, double t_cim, double f_base, double t_base);

enum class ModelKind { kFull, kSimplified };
enum class SolverKind { kExact, kSa, kTabu, kCim };

std::string to_string(ModelKind kind);
std::string to_string(SolverKind kind);
ModelKind parse_model_kind(const std::string& text);
SolverKind parse_solver_kind(const std::string& text);

/// A built model of either kind together with the Ising image used by the
/// CIM simulator.
struct PreparedModel {
  ModelKind kind = ModelKind::kSimplified;
  BuiltModel model;
  IsingModel ising;
  FullModelParams params;

  const Qubo& qubo() const noexcept { return model.qubo; }
  const VarRegistry& registry() const noexcept { return model.registry; }
};

/// For the simplified model only delta1, r and lambda are used.
PreparedModel prepare_model(const Instance& instance, ModelKind kind,
                            const FullModelParams& params);

struct SolverSpec {
  SolverKind kind = SolverKind::kSa;
  SaConfig sa;
  TabuConfig tabu;
  CimConfig cim;
  ExactOptions exact;

  std::string name() const { return to_string(kind); }
};

/// Runs one solver with the given seed (ignored by the exact solver).
SolutionPool run_solver(const SolverSpec& spec, const PreparedModel& model, std::uint64_t seed);
/// As run_solver but also returns the CIM trajectory when applicable.
SolutionPool run_solver(const SolverSpec& spec, const PreparedModel& model, std::uint64_t seed,
                        Trajectory* trajectory);

struct BenchInstance {
  std::string name;
  Instance instance;
  ModelKind model = ModelKind::kSimplified;
  FullModelParams params;
};

struct BenchEntry {
  std::string instance;
  std::string solver;
  long long bits = 0;
  long long formula_bits = 0;
  int repetitions = 0;
  double mean_time_seconds = 0.0;
  double mean_objective = 0.0;
  int best_objective = 0;
  /// Objective of each repetition (0 when no feasible entry was found).
  std::vector<int> objectives;
  std::vector<double> times_seconds;

  friend bool operator==(const BenchEntry&, const BenchEntry&) = default;
};

struct RatioRow {
  std::string instance;
  std::optional<double> gamma;  // nullopt when the baseline objective is 0

  friend bool operator==(const RatioRow&, const RatioRow&) = default;
};

struct RatioSummary {
  std::string reference;
  std::string baseline;
  std::vector<RatioRow> rows;
  /// Mean over rows with a finite γ.
  std::optional<double> mean;

  friend bool operator==(const RatioSummary&, const RatioSummary&) = default;
};

struct BenchResult {
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<BenchEntry> entries;
  std::vector<RatioSummary> ratios;
  std::vector<std::string> notes;

  friend bool operator==(const BenchResult&, const BenchResult&) = default;
};

/// Seed of repetition `rep` of solver `solver` on instance `instance`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t instance, std::uint64_t solver,
                          std::uint64_t rep);

/// For every instance and solver: `repetitions` runs of solve + top-k
/// post-selection, timed together (model construction excluded). Ratios
/// are emitted for `reference` against every other solver when present.
BenchResult run_benchmark(const std::vector<BenchInstance>& instances,
                          const std::vector<SolverSpec>& solvers, int repetitions,
                          std::uint64_t seed, const std::string& reference = "cim",
                          std::size_t top_k = kDefaultTopK);

/// One line of the tabular report: instance,bits,solver,time,value.
struct TableRow {
  std::string instance;
  long long bits = 0;
  std::string solver;
  double time_seconds = 0.0;
  double value = 0.0;
};

std::vector<TableRow> table_rows(const BenchResult& result);
void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out);
std::vector<TableRow> read_table_csv(std::istream& in);

/// γ of `reference` against every other solver, per instance in first-seen
/// order, plus the mean.
std::vector<RatioSummary> compute_ratios(const std::vector<TableRow>& rows,
                                         const std::string& reference = "cim");

}  // namespace mbsq
