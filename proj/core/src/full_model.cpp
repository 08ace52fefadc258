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

#include "mbsq/full_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mbsq {

namespace {

std::string tag(const char* name, std::initializer_list<int> idx) {
  std::string out(name);
  out += '(';
  bool first = true;
  for (int v : idx) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += ')';
  return out;
}

void check_selection(const Instance& instance, const BeamSelection& selection) {
  if (selection.cells() != instance.cells())
    throw std::out_of_range("selection has " + std::to_string(selection.cells()) +
                            " cells, instance has " + std::to_string(instance.cells()));
  for (const auto& beams : selection.beams)
    for (int k : beams)
      if (k < 0 || k >= instance.beams())
        throw std::out_of_range("selection references beam " + std::to_string(k));
}

// c_ij for one covering slot: best present, selected beam; 0 if none.
std::int64_t cell_power(const std::vector<std::int32_t>& row, const std::vector<int>& beams) {
  std::int64_t best = 0;
  for (int k : beams) {
    const auto s = row[k];
    if (s != Instance::kAbsent) best = std::max<std::int64_t>(best, s);
  }
  return best;
}

// a = max, b = second-largest with multiplicity.
void grid_extrema(const std::vector<std::int64_t>& c, std::int64_t& a,
                  std::optional<std::int64_t>& b) {
  a = 0;
  b.reset();
  if (c.empty()) return;
  std::int64_t first = c[0];
  std::int64_t second = -1;
  for (std::size_t s = 1; s < c.size(); ++s) {
    if (c[s] > first) {
      second = first;
      first = c[s];
    } else if (c[s] > second) {
      second = c[s];
    }
  }
  a = first;
  if (c.size() >= 2) b = second;
}

GridDiagnostics diagnose(std::vector<std::int64_t> c, std::int64_t delta1, std::int64_t delta2) {
  GridDiagnostics g;
  g.c = std::move(c);
  grid_extrema(g.c, g.a, g.b);
  if (g.a < delta1) {
    g.failure = GridFailure::kCoverage;
  } else if (g.b && g.a - *g.b < delta2) {
    g.failure = GridFailure::kInterference;
  }
  g.z = g.failure == GridFailure::kNone;
  return g;
}

}  // namespace

void validate(const FullModelParams& params, const Instance& instance) {
  const auto m_big = instance.big_m();
  if (params.delta1 < 0 || params.delta1 > m_big)
    throw std::invalid_argument("delta1 must lie in [0, M=" + std::to_string(m_big) + "]");
  if (params.delta2 < 0 || params.delta2 > m_big)
    throw std::invalid_argument("delta2 must lie in [0, M=" + std::to_string(m_big) + "]");
  if (params.r < 1 || params.r > instance.beams())
    throw std::invalid_argument("r must lie in [1, n=" + std::to_string(instance.beams()) + "]");
  if (params.lambda && !(*params.lambda > 0.0))
    throw std::invalid_argument("lambda must be positive");
}

std::size_t BeamSelection::total() const {
  std::size_t count = 0;
  for (const auto& b : beams) count += b.size();
  return count;
}

bool BeamSelection::selected(int cell, int beam) const {
  const auto& b = beams.at(cell);
  return std::binary_search(b.begin(), b.end(), beam);
}

ObjectiveResult exact_objective(const Instance& instance, const BeamSelection& selection,
                                std::int64_t delta1, std::int64_t delta2) {
  check_selection(instance, selection);
  ObjectiveResult result;
  result.grids.reserve(instance.grids());
  for (int i = 0; i < instance.grids(); ++i) {
    const auto& cov = instance.coverage(i);
    std::vector<std::int64_t> c(cov.size());
    for (std::size_t slot = 0; slot < cov.size(); ++slot)
      c[slot] = cell_power(instance.rsrp_row(i, static_cast<int>(slot)), selection.beams[cov[slot]]);
    result.grids.push_back(diagnose(std::move(c), delta1, delta2));
    result.count += result.grids.back().z ? 1 : 0;
  }
  return result;
}

OracleResult brute_force_selection(const Instance& instance, const FullModelParams& params) {
  const int n = instance.beams();
  const int v = instance.cells();
  if (params.r < 0) throw std::invalid_argument("r must be non-negative");
  const int r = std::min(params.r, n);

  // Per-cell subsets of size <= r in lexicographic order of sorted lists.
  std::vector<std::vector<int>> subsets;
  std::vector<int> prefix;
  std::function<void(int)> visit = [&](int next) {
    subsets.push_back(prefix);
    if (static_cast<int>(prefix.size()) == r) return;
    for (int k = next; k < n; ++k) {
      prefix.push_back(k);
      visit(k + 1);
      prefix.pop_back();
    }
  };
  visit(0);

  const double space = std::pow(static_cast<double>(subsets.size()), v);
  if (space > kBruteForceLimit)
    throw std::invalid_argument("brute_force_selection: search space " + std::to_string(space) +
                                " exceeds limit");

  // power[i][slot][subset] = c_ij for that subset of the slot's cell.
  const int m = instance.grids();
  std::vector<std::vector<std::vector<std::int64_t>>> power(m);
  for (int i = 0; i < m; ++i) {
    const auto slots = instance.coverage(i).size();
    power[i].resize(slots);
    for (std::size_t slot = 0; slot < slots; ++slot) {
      const auto& row = instance.rsrp_row(i, static_cast<int>(slot));
      power[i][slot].reserve(subsets.size());
      for (const auto& subset : subsets) power[i][slot].push_back(cell_power(row, subset));
    }
  }

  std::vector<std::size_t> choice(v, 0);
  std::vector<std::int64_t> c;
  int best_count = -1;
  std::vector<std::size_t> best_choice;
  while (true) {
    int count = 0;
    for (int i = 0; i < m; ++i) {
      const auto& cov = instance.coverage(i);
      c.resize(cov.size());
      for (std::size_t slot = 0; slot < cov.size(); ++slot) c[slot] = power[i][slot][choice[cov[slot]]];
      std::int64_t a = 0;
      std::optional<std::int64_t> b;
      grid_extrema(c, a, b);
      if (a >= params.delta1 && (!b || a - *b >= params.delta2)) ++count;
    }
    if (count > best_count) {
      best_count = count;
      best_choice = choice;
    }
    // Odometer with the last cell varying fastest.
    int j = v - 1;
    while (j >= 0 && ++choice[j] == subsets.size()) {
      choice[j] = 0;
      --j;
    }
    if (j < 0) break;
  }

  OracleResult result;
  result.best = BeamSelection(v);
  for (int j = 0; j < v; ++j) result.best.beams[j] = subsets[best_choice[j]];
  result.count = best_count;
  return result;
}

FullModel build_full_model(const Instance& instance, const FullModelParams& params) {
  validate(params, instance);
  const int m = instance.grids();
  const int v = instance.cells();
  const int n = instance.beams();
  const std::int64_t big_m = instance.big_m();
  const double lambda = params.lambda_for(instance);
  const int width = bits_for(big_m);

  QuboBuilder builder;
  FullVarLayout layout;
  layout.value_bits = width;

  layout.x.assign(v, std::vector<std::size_t>(n));
  for (int j = 0; j < v; ++j)
    for (int k = 0; k < n; ++k) layout.x[j][k] = builder.add_variable({VarFamily::kX, {j, k}});

  layout.z.resize(m);
  layout.d.resize(m);
  layout.p.resize(m);
  layout.q.resize(m);
  layout.a.resize(m);
  layout.b.resize(m);
  layout.c.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& cov = instance.coverage(i);
    const int slots = static_cast<int>(cov.size());
    layout.z[i] = builder.add_variable({VarFamily::kZ, {i}});
    layout.a[i] = builder.add_integer(VarFamily::kABit, {i}, width);
    if (slots >= 2) layout.b[i] = builder.add_integer(VarFamily::kBBit, {i}, width);
    layout.d[i].resize(slots);
    layout.c[i].resize(slots);
    for (int slot = 0; slot < slots; ++slot) {
      const int j = cov[slot];
      layout.c[i][slot] = builder.add_integer(VarFamily::kCBit, {i, j}, width);
      for (int k = 0; k < n; ++k)
        layout.d[i][slot].push_back(builder.add_variable({VarFamily::kD, {i, j, k}}));
      layout.p[i].push_back(builder.add_variable({VarFamily::kP, {i, j}}));
      if (slots >= 2) layout.q[i].push_back(builder.add_variable({VarFamily::kQ, {i, j}}));
    }
  }

  for (int i = 0; i < m; ++i) builder.add_linear(layout.z[i], -1.0);

  for (int i = 0; i < m; ++i) {
    const auto& cov = instance.coverage(i);
    const int slots = static_cast<int>(cov.size());
    const auto& a = layout.a[i];

    for (int slot = 0; slot < slots; ++slot) {
      const int j = cov[slot];
      const auto& c = layout.c[i][slot];
      const auto& row = instance.rsrp_row(i, slot);

      // c_ij is the largest selected s_ijk: c >= s·x and c <= s·x + (1-d)M
      // with exactly one d per (i, j).
      LinearExpr one_d(-1);
      for (int k = 0; k < n; ++k) {
        const std::int64_t s = row[k] == Instance::kAbsent ? 0 : row[k];
        LinearExpr lower = c.expr();
        lower.add(layout.x[j][k], -s);
        builder.add_nonnegative(tag("cell_max_lower", {i, j, k}), lower, lambda);

        LinearExpr upper(big_m);
        upper.add(layout.x[j][k], s).add(layout.d[i][slot][k], -big_m).add(c.expr(-1));
        builder.add_nonnegative(tag("cell_max_upper", {i, j, k}), upper, lambda);

        one_d.add(layout.d[i][slot][k], 1);
      }
      builder.add_equality(tag("cell_max_pick", {i, j}), one_d, lambda);
    }

    // a_i = max_j c_ij with exactly one p per grid.
    LinearExpr one_p(-1);
    for (int slot = 0; slot < slots; ++slot) {
      const int j = cov[slot];
      const auto& c = layout.c[i][slot];
      LinearExpr lower = a.expr();
      lower.add(c.expr(-1));
      builder.add_nonnegative(tag("grid_max_lower", {i, j}), lower, lambda);

      LinearExpr upper(big_m);
      upper.add(c.expr()).add(layout.p[i][slot], -big_m).add(a.expr(-1));
      builder.add_nonnegative(tag("grid_max_upper", {i, j}), upper, lambda);
      one_p.add(layout.p[i][slot], 1);
    }
    builder.add_equality(tag("grid_max_pick", {i}), one_p, lambda);

    // b_i = second-largest c_ij with exactly two q per grid.
    if (layout.b[i]) {
      const auto& b = *layout.b[i];
      LinearExpr two_q(-2);
      for (int slot = 0; slot < slots; ++slot) {
        const int j = cov[slot];
        const auto& c = layout.c[i][slot];
        LinearExpr lower = b.expr();
        lower.add(c.expr(-1)).add(layout.p[i][slot], big_m);
        builder.add_nonnegative(tag("second_max_lower", {i, j}), lower, lambda);

        LinearExpr upper(big_m);
        upper.add(c.expr()).add(layout.q[i][slot], -big_m).add(b.expr(-1));
        builder.add_nonnegative(tag("second_max_upper", {i, j}), upper, lambda);
        two_q.add(layout.q[i][slot], 1);
      }
      builder.add_equality(tag("second_max_pick", {i}), two_q, lambda);
    }

    // z_i = 1 forces a_i >= delta1 and a_i - b_i >= delta2.
    LinearExpr coverage(big_m - params.delta1);
    coverage.add(layout.z[i], -big_m).add(a.expr());
    builder.add_nonnegative(tag("coverage_threshold", {i}), coverage, lambda);

    if (layout.b[i]) {
      LinearExpr gap(big_m - params.delta2);
      gap.add(layout.z[i], -big_m).add(a.expr()).add(layout.b[i]->expr(-1));
      builder.add_nonnegative(tag("interference_gap", {i}), gap, lambda);
    }
  }

  for (int j = 0; j < v; ++j) {
    LinearExpr budget(params.r);
    for (int k = 0; k < n; ++k) budget.add(layout.x[j][k], -1);
    builder.add_nonnegative(tag("beam_budget", {j}), budget, lambda);
  }

  return FullModel{builder.finish(), std::move(layout), params};
}

BeamSelection extract_selection(const VarRegistry& registry, std::span<const std::uint8_t> x,
                                int cells) {
  if (x.size() != registry.size())
    throw std::invalid_argument("assignment length does not match registry size");
  BeamSelection selection(cells);
  for (std::size_t idx = 0; idx < registry.size(); ++idx) {
    const auto& name = registry.name(idx);
    if (name.family != VarFamily::kX || !x[idx]) continue;
    const int j = name.index.at(0);
    if (j < 0 || j >= cells) throw std::out_of_range("registry cell index out of range");
    selection.beams[j].push_back(name.index.at(1));
  }
  for (auto& b : selection.beams) std::sort(b.begin(), b.end());
  return selection;
}

DecodedFull decode_full(std::span<const std::uint8_t> x, const FullModel& model,
                        const Instance& instance) {
  if (x.size() != model.registry().size())
    throw std::invalid_argument("decode_full: assignment size " + std::to_string(x.size()) +
                                " does not match registry size " +
                                std::to_string(model.registry().size()));
  DecodedFull out;
  out.selection = extract_selection(model.registry(), x, instance.cells());
  out.objective =
      exact_objective(instance, out.selection, model.params.delta1, model.params.delta2);
  out.energy = energy(model.qubo(), x);
  out.penalty_residual = out.energy + out.objective.count;
  return out;
}

Assignment full_witness(const FullModel& model, const Instance& instance,
                        const BeamSelection& selection) {
  check_selection(instance, selection);
  const auto& layout = model.layout;
  Assignment x(model.registry().size(), 0);
  auto set_integer = [&](const BinaryInteger& value, std::int64_t v) {
    for (std::size_t t = 0; t < value.bits.size(); ++t) x[value.bits[t]] = (v >> t) & 1;
  };

  for (int j = 0; j < instance.cells(); ++j)
    for (int k : selection.beams[j]) x[layout.x[j][k]] = 1;

  const auto objective =
      exact_objective(instance, selection, model.params.delta1, model.params.delta2);
  for (int i = 0; i < instance.grids(); ++i) {
    const auto& diag = objective.grids[i];
    const auto& cov = instance.coverage(i);
    const int slots = static_cast<int>(cov.size());
    x[layout.z[i]] = diag.z ? 1 : 0;
    set_integer(layout.a[i], diag.a);
    if (layout.b[i]) set_integer(*layout.b[i], diag.b.value_or(0));

    for (int slot = 0; slot < slots; ++slot) {
      const int j = cov[slot];
      set_integer(layout.c[i][slot], diag.c[slot]);
      const auto& row = instance.rsrp_row(i, slot);
      int best_k = 0;
      std::int64_t best = -1;
      for (int k = 0; k < instance.beams(); ++k) {
        const std::int64_t s = (row[k] == Instance::kAbsent || !selection.selected(j, k)) ? 0 : row[k];
        if (s > best) {
          best = s;
          best_k = k;
        }
      }
      x[layout.d[i][slot][best_k]] = 1;
    }

    int p_slot = 0;
    for (int slot = 1; slot < slots; ++slot)
      if (diag.c[slot] > diag.c[p_slot]) p_slot = slot;
    x[layout.p[i][p_slot]] = 1;
    if (!layout.q[i].empty()) {
      int q_slot = -1;
      for (int slot = 0; slot < slots; ++slot) {
        if (slot == p_slot) continue;
        if (q_slot < 0 || diag.c[slot] > diag.c[q_slot]) q_slot = slot;
      }
      x[layout.q[i][p_slot]] = 1;
      x[layout.q[i][q_slot]] = 1;
    }
  }

  // Slack bits take the value of the rest of their constraint.
  for (const auto& term : model.model.penalties) {
    if (term.slack_bits.empty()) continue;
    std::int64_t rest = term.expr.evaluate(x);  // slack bits are still zero
    if (rest < 0) continue;
    for (std::size_t t = 0; t < term.slack_bits.size(); ++t) x[term.slack_bits[t]] = (rest >> t) & 1;
  }
  return x;
}

FeasibilityReport check_feasibility_full(const Instance& instance, const BeamSelection& selection,
                                         const FullModelParams& params) {
  FeasibilityReport report;
  report.objective = exact_objective(instance, selection, params.delta1, params.delta2);
  for (const auto& beams : selection.beams) {
    report.beams_per_cell.push_back(static_cast<int>(beams.size()));
    const bool ok = static_cast<int>(beams.size()) <= params.r;
    report.cell_ok.push_back(ok);
    report.cardinality_ok = report.cardinality_ok && ok;
  }
  return report;
}

}  // namespace mbsq
