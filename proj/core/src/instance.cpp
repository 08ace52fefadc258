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

#include "mbsq/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace mbsq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double rejects a leading '+'; strtod-like tolerance is
    // not needed for machine-written CSV.
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
  } else {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
  }
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

std::int64_t ScalingParams::to_scaled(double dbm) const {
  return std::llround((dbm + offset) * scale);
}

double ScalingParams::to_dbm(std::int64_t scaled) const {
  return static_cast<double>(scaled) / scale - offset;
}

std::int64_t ScalingParams::gap_to_scaled(double db) const {
  return std::llround(db * scale);
}

Instance::Instance(int m, int v, int n, std::vector<std::vector<int>> coverage,
                   std::vector<std::vector<std::vector<std::int32_t>>> values,
                   ScalingParams scaling)
    : m_(m), v_(v), n_(n), coverage_(std::move(coverage)),
      values_(std::move(values)), scaling_(scaling) {
  if (m_ <= 0 || v_ <= 0 || n_ <= 0)
    throw std::invalid_argument("instance dimensions must be positive");
  if (!(scaling_.scale > 0.0) || !std::isfinite(scaling_.offset))
    throw std::invalid_argument("scaling: scale must be positive and offset finite");
  if (static_cast<int>(coverage_.size()) != m_ || static_cast<int>(values_.size()) != m_)
    throw std::invalid_argument("coverage/rsrp must have one entry per grid");
  big_m_ = 0;
  for (int i = 0; i < m_; ++i) {
    auto& cov = coverage_[i];
    if (cov.empty())
      throw std::invalid_argument("grid " + std::to_string(i) + " has no covering cell");
    if (!std::is_sorted(cov.begin(), cov.end()) ||
        std::adjacent_find(cov.begin(), cov.end()) != cov.end())
      throw std::invalid_argument("coverage of grid " + std::to_string(i) +
                                  " must be strictly ascending");
    if (cov.front() < 0 || cov.back() >= v_)
      throw std::invalid_argument("coverage of grid " + std::to_string(i) +
                                  " references an unknown cell");
    if (values_[i].size() != cov.size())
      throw std::invalid_argument("rsrp of grid " + std::to_string(i) +
                                  " must have one row per covering cell");
    for (const auto& row : values_[i]) {
      if (static_cast<int>(row.size()) != n_)
        throw std::invalid_argument("rsrp row length must equal the beam count");
      for (auto s : row) {
        if (s == kAbsent) continue;
        if (s < 0) throw std::invalid_argument("scaled rsrp must be non-negative");
        big_m_ = std::max(big_m_, s);
      }
    }
  }
}

std::optional<int> Instance::slot_of(int grid, int cell) const {
  const auto& cov = coverage_.at(grid);
  auto it = std::lower_bound(cov.begin(), cov.end(), cell);
  if (it == cov.end() || *it != cell) return std::nullopt;
  return static_cast<int>(it - cov.begin());
}

std::optional<std::int32_t> Instance::rsrp(int grid, int slot, int beam) const {
  auto s = values_.at(grid).at(slot).at(beam);
  if (s == kAbsent) return std::nullopt;
  return s;
}

std::optional<std::int32_t> Instance::rsrp_by_cell(int grid, int cell, int beam) const {
  auto slot = slot_of(grid, cell);
  if (!slot) return std::nullopt;
  return rsrp(grid, *slot, beam);
}

std::size_t Instance::defined_entries() const {
  std::size_t count = 0;
  for (const auto& grid : values_)
    for (const auto& row : grid)
      count += static_cast<std::size_t>(
          std::count_if(row.begin(), row.end(), [](auto s) { return s != kAbsent; }));
  return count;
}

std::vector<RsrpRecord> parse_records(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    auto fields = split_commas(t);
    if (fields.size() != 4 || fields[0] != "grid_id" || fields[1] != "cell_id" ||
        fields[2] != "beam_id" || fields[3] != "rsrp_dbm")
      throw ParseError("missing header 'grid_id,cell_id,beam_id,rsrp_dbm'", line_no);
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("missing header 'grid_id,cell_id,beam_id,rsrp_dbm'");

  std::vector<RsrpRecord> records;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> seen;
  while (std::getline(source, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    auto fields = split_commas(t);
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    RsrpRecord rec;
    if (!parse_number(fields[0], rec.grid_id) || !parse_number(fields[1], rec.cell_id) ||
        !parse_number(fields[2], rec.beam_id) || !parse_number(fields[3], rec.rsrp_dbm))
      throw ParseError("malformed row '" + std::string(t) + "'", line_no);
    if (!seen.emplace(rec.grid_id, rec.cell_id, rec.beam_id).second)
      throw ParseError("duplicate (grid_id, cell_id, beam_id) triple", line_no);
    records.push_back(rec);
  }
  return records;
}

void write_records_csv(const Instance& instance, std::ostream& out) {
  out << "grid_id,cell_id,beam_id,rsrp_dbm\n";
  const auto& scaling = instance.scaling();
  for (int i = 0; i < instance.grids(); ++i) {
    const auto& cov = instance.coverage(i);
    for (std::size_t slot = 0; slot < cov.size(); ++slot) {
      const auto& row = instance.rsrp_row(i, static_cast<int>(slot));
      for (int k = 0; k < instance.beams(); ++k) {
        if (row[k] == Instance::kAbsent) continue;
        out << i << ',' << cov[slot] << ',' << k << ','
            << format_double(scaling.to_dbm(row[k])) << '\n';
      }
    }
  }
}

Instance build_instance(const std::vector<RsrpRecord>& records,
                        std::optional<ScalingParams> scaling) {
  if (records.empty()) throw std::invalid_argument("build_instance: no records");

  std::map<std::uint64_t, int> grid_ids, cell_ids, beam_ids;
  double min_dbm = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    grid_ids.emplace(r.grid_id, 0);
    cell_ids.emplace(r.cell_id, 0);
    beam_ids.emplace(r.beam_id, 0);
    min_dbm = std::min(min_dbm, r.rsrp_dbm);
  }
  int next = 0;
  for (auto& [id, idx] : grid_ids) idx = next++;
  next = 0;
  for (auto& [id, idx] : cell_ids) idx = next++;
  next = 0;
  for (auto& [id, idx] : beam_ids) idx = next++;

  ScalingParams params = scaling.value_or(ScalingParams{-min_dbm, 10.0});
  if (!(params.scale > 0.0)) throw std::invalid_argument("scaling: scale must be positive");

  const int m = static_cast<int>(grid_ids.size());
  const int v = static_cast<int>(cell_ids.size());
  const int n = static_cast<int>(beam_ids.size());

  std::vector<std::set<int>> cov_sets(m);
  for (const auto& r : records) cov_sets[grid_ids[r.grid_id]].insert(cell_ids[r.cell_id]);

  std::vector<std::vector<int>> coverage(m);
  std::vector<std::vector<std::vector<std::int32_t>>> values(m);
  for (int i = 0; i < m; ++i) {
    coverage[i].assign(cov_sets[i].begin(), cov_sets[i].end());
    values[i].assign(coverage[i].size(), std::vector<std::int32_t>(n, Instance::kAbsent));
  }
  for (const auto& r : records) {
    const int i = grid_ids[r.grid_id];
    const int j = cell_ids[r.cell_id];
    const int k = beam_ids[r.beam_id];
    auto slot = std::lower_bound(coverage[i].begin(), coverage[i].end(), j) - coverage[i].begin();
    const auto scaled = params.to_scaled(r.rsrp_dbm);
    if (scaled < 0)
      throw std::invalid_argument("scaling maps record (" + std::to_string(r.grid_id) + "," +
                                  std::to_string(r.cell_id) + "," + std::to_string(r.beam_id) +
                                  ") to a negative value");
    if (scaled > std::numeric_limits<std::int32_t>::max())
      throw std::invalid_argument("scaled rsrp overflows 32-bit range");
    values[i][slot][k] = static_cast<std::int32_t>(scaled);
  }
  return Instance(m, v, n, std::move(coverage), std::move(values), params);
}

BinaryTensor binarize(const Instance& instance, std::int64_t delta1) {
  BinaryTensor out(instance.grids());
  for (int i = 0; i < instance.grids(); ++i) {
    const auto slots = instance.coverage(i).size();
    out[i].resize(slots);
    for (std::size_t slot = 0; slot < slots; ++slot) {
      const auto& row = instance.rsrp_row(i, static_cast<int>(slot));
      out[i][slot].resize(row.size());
      for (std::size_t k = 0; k < row.size(); ++k)
        out[i][slot][k] = (row[k] != Instance::kAbsent && row[k] >= delta1) ? 1 : 0;
    }
  }
  return out;
}

Instance generate_synthetic(const SyntheticSpec& spec) {
  if (spec.m <= 0 || spec.v <= 0 || spec.n <= 0)
    throw std::invalid_argument("generate_synthetic: dimensions must be positive");
  if (spec.min_cells_per_grid > spec.max_cells_per_grid)
    throw std::invalid_argument("generate_synthetic: empty cells-per-grid range");
  if (spec.max_cells_per_grid > spec.v)
    throw std::invalid_argument("generate_synthetic: cells_per_grid exceeds cell count");
  if (spec.min_cells_per_grid < 1 || (spec.min_cells_per_grid < 2 && !spec.allow_single_cell))
    throw std::invalid_argument(
        "generate_synthetic: cells_per_grid must be >= 2 (single-cell grids need allow_single_cell)");
  if (spec.rsrp_min < 0 || spec.rsrp_min > spec.rsrp_max)
    throw std::invalid_argument("generate_synthetic: rsrp range must be non-negative and ordered");

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> count_dist(spec.min_cells_per_grid, spec.max_cells_per_grid);
  std::uniform_int_distribution<std::int32_t> rsrp_dist(spec.rsrp_min, spec.rsrp_max);

  std::vector<int> all_cells(spec.v);
  for (int j = 0; j < spec.v; ++j) all_cells[j] = j;

  std::vector<std::vector<int>> coverage(spec.m);
  std::vector<std::vector<std::vector<std::int32_t>>> values(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    const int count = count_dist(rng);
    // Partial Fisher-Yates: first `count` entries become a uniform subset.
    auto cells = all_cells;
    for (int t = 0; t < count; ++t) {
      std::uniform_int_distribution<int> pick(t, spec.v - 1);
      std::swap(cells[t], cells[pick(rng)]);
    }
    coverage[i].assign(cells.begin(), cells.begin() + count);
    std::sort(coverage[i].begin(), coverage[i].end());
    values[i].assign(count, std::vector<std::int32_t>(spec.n));
    for (auto& row : values[i])
      for (auto& s : row) s = rsrp_dist(rng);
  }
  return Instance(spec.m, spec.v, spec.n, std::move(coverage), std::move(values), spec.scaling);
}

}  // namespace mbsq
