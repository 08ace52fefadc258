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

#include "mbsq/json_io.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "mbsq/errors.hpp"

namespace mbsq {

using json = nlohmann::ordered_json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const char* failure_name(GridFailure f) {
  switch (f) {
    case GridFailure::kNone: return "none";
    case GridFailure::kCoverage: return "coverage";
    case GridFailure::kInterference: return "interference";
  }
  return "none";
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string instance_to_json(const Instance& instance, int indent) {
  json doc;
  doc["m"] = instance.grids();
  doc["v"] = instance.cells();
  doc["n"] = instance.beams();
  json coverage = json::array();
  json rsrp = json::array();
  for (int i = 0; i < instance.grids(); ++i) {
    coverage.push_back(instance.coverage(i));
    for (std::size_t slot = 0; slot < instance.coverage(i).size(); ++slot) {
      const auto& row = instance.rsrp_row(i, static_cast<int>(slot));
      for (int k = 0; k < instance.beams(); ++k)
        if (row[k] != Instance::kAbsent)
          rsrp.push_back({i, instance.coverage(i)[slot], k, row[k]});
    }
  }
  doc["coverage"] = std::move(coverage);
  doc["rsrp"] = std::move(rsrp);
  doc["big_m"] = instance.big_m();
  doc["scaling"] = {{"offset", instance.scaling().offset}, {"scale", instance.scaling().scale}};
  return doc.dump(indent);
}

Instance instance_from_json(const std::string& text) {
  const auto doc = parse_document(text);
  try {
    const int m = doc.at("m").get<int>();
    const int v = doc.at("v").get<int>();
    const int n = doc.at("n").get<int>();
    if (m < 0 || v < 0 || n < 0) throw std::invalid_argument("negative dimension");
    auto coverage = doc.at("coverage").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(coverage.size()) != m)
      throw std::invalid_argument("coverage must list one entry per grid");
    std::vector<std::vector<std::vector<std::int32_t>>> values(m);
    for (int i = 0; i < m; ++i)
      values[i].assign(coverage[i].size(), std::vector<std::int32_t>(n, Instance::kAbsent));
    for (const auto& entry : doc.at("rsrp")) {
      if (!entry.is_array() || entry.size() != 4)
        throw ParseError("rsrp entries must be [grid, cell, beam, value]");
      const int i = entry[0].get<int>();
      const int j = entry[1].get<int>();
      const int k = entry[2].get<int>();
      const auto s = entry[3].get<std::int32_t>();
      if (i < 0 || i >= m || k < 0 || k >= n)
        throw std::invalid_argument("rsrp entry index out of range");
      const auto& cov = coverage[i];
      const auto it = std::find(cov.begin(), cov.end(), j);
      if (it == cov.end()) throw std::invalid_argument("rsrp entry for a non-covering cell");
      auto& slot = values[i][it - cov.begin()][k];
      if (slot != Instance::kAbsent) throw std::invalid_argument("duplicate rsrp entry");
      slot = s;
    }
    ScalingParams scaling;
    if (doc.contains("scaling")) {
      scaling.offset = doc["scaling"].at("offset").get<double>();
      scaling.scale = doc["scaling"].at("scale").get<double>();
    }
    Instance instance(m, v, n, std::move(coverage), std::move(values), scaling);
    if (doc.contains("big_m") && doc["big_m"].get<std::int32_t>() != instance.big_m())
      throw std::invalid_argument("big_m does not match the RSRP values");
    return instance;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

std::string solution_to_json(const Solution& solution, std::optional<double> penalty_residual,
                             int indent) {
  json doc;
  doc["selection"] = solution.selection.beams;
  doc["count"] = solution.objective;
  json grids = json::array();
  for (std::size_t i = 0; i < solution.diagnostics.grids.size(); ++i) {
    const auto& g = solution.diagnostics.grids[i];
    json b = g.b ? json(*g.b) : json(nullptr);
    grids.push_back({{"grid", i},
                     {"c", g.c},
                     {"a", g.a},
                     {"b", b},
                     {"z", g.z},
                     {"failure", failure_name(g.failure)}});
  }
  doc["per_grid"] = std::move(grids);
  doc["energy"] = solution.energy;
  doc["feasible"] = solution.feasible;
  doc["penalty_residual"] = optional_number(penalty_residual);
  doc["source_rank"] = solution.source_rank;
  return doc.dump(indent);
}

std::string bench_result_to_json(const BenchResult& result, int indent) {
  json doc;
  doc["repetitions"] = result.repetitions;
  doc["seed"] = result.seed;
  json entries = json::array();
  for (const auto& e : result.entries)
    entries.push_back({{"instance", e.instance},
                       {"solver", e.solver},
                       {"bits", e.bits},
                       {"formula_bits", e.formula_bits},
                       {"repetitions", e.repetitions},
                       {"mean_time_s", e.mean_time_seconds},
                       {"mean_objective", e.mean_objective},
                       {"best_objective", e.best_objective},
                       {"objectives", e.objectives},
                       {"times_s", e.times_seconds}});
  doc["entries"] = std::move(entries);
  json ratios = json::array();
  for (const auto& r : result.ratios) {
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"instance", row.instance}, {"gamma", optional_number(row.gamma)}});
    ratios.push_back({{"reference", r.reference},
                      {"baseline", r.baseline},
                      {"rows", std::move(rows)},
                      {"mean", optional_number(r.mean)}});
  }
  doc["ratios"] = std::move(ratios);
  doc["notes"] = result.notes;
  return doc.dump(indent);
}

BenchResult bench_result_from_json(const std::string& text) {
  const auto doc = parse_document(text);
  try {
    BenchResult result;
    result.repetitions = doc.at("repetitions").get<int>();
    result.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& e : doc.at("entries")) {
      BenchEntry entry;
      entry.instance = e.at("instance").get<std::string>();
      entry.solver = e.at("solver").get<std::string>();
      entry.bits = e.at("bits").get<long long>();
      entry.formula_bits = e.at("formula_bits").get<long long>();
      entry.repetitions = e.at("repetitions").get<int>();
      entry.mean_time_seconds = e.at("mean_time_s").get<double>();
      entry.mean_objective = e.at("mean_objective").get<double>();
      entry.best_objective = e.at("best_objective").get<int>();
      entry.objectives = e.at("objectives").get<std::vector<int>>();
      entry.times_seconds = e.at("times_s").get<std::vector<double>>();
      result.entries.push_back(std::move(entry));
    }
    for (const auto& r : doc.at("ratios")) {
      RatioSummary summary;
      summary.reference = r.at("reference").get<std::string>();
      summary.baseline = r.at("baseline").get<std::string>();
      for (const auto& row : r.at("rows"))
        summary.rows.push_back({row.at("instance").get<std::string>(), read_optional(row.at("gamma"))});
      summary.mean = read_optional(r.at("mean"));
      result.ratios.push_back(std::move(summary));
    }
    if (doc.contains("notes")) result.notes = doc["notes"].get<std::vector<std::string>>();
    return result;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed benchmark report: ") + e.what());
  }
}

}  // namespace mbsq
