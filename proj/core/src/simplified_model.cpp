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

#include "mbsq/simplified_model.hpp"

#include <stdexcept>
#include <string>

namespace mbsq {

namespace {

long long ceil_log2(long long value) {
  long long bits = 0;
  while ((1LL << bits) < value) ++bits;
  return bits;
}

}  // namespace

void validate(const SimplifiedModelParams& params, const Instance& instance) {
  if (params.delta1 < 0 || params.delta1 > instance.big_m())
    throw std::invalid_argument("delta1 must lie in [0, M=" + std::to_string(instance.big_m()) +
                                "]");
  if (params.r < 1 || params.r > instance.beams())
    throw std::invalid_argument("r must lie in [1, n=" + std::to_string(instance.beams()) + "]");
  if (params.lambda && !(*params.lambda > 0.0))
    throw std::invalid_argument("lambda must be positive");
}

SimplifiedModel build_simplified_model(const Instance& instance,
                                       const SimplifiedModelParams& params) {
  validate(params, instance);
  const int m = instance.grids();
  const int v = instance.cells();
  const int n = instance.beams();
  const double lambda = params.lambda_for(instance);
  const auto covered = binarize(instance, params.delta1);

  QuboBuilder builder;
  SimplifiedVarLayout layout;
  layout.x.assign(v, std::vector<std::size_t>(n));
  for (int j = 0; j < v; ++j)
    for (int k = 0; k < n; ++k) layout.x[j][k] = builder.add_variable({VarFamily::kX, {j, k}});
  for (int i = 0; i < m; ++i) layout.z.push_back(builder.add_variable({VarFamily::kZ, {i}}));

  int constraint = 0;
  for (int i = 0; i < m; ++i) {
    const auto& cov = instance.coverage(i);
    // Σ x s̄ ranges over [0, |V_i|·n].
    const int width = bits_for(static_cast<std::int64_t>(cov.size()) * n);
    layout.coverage_slack.push_back(builder.add_integer(VarFamily::kSlack, {constraint++}, width));
  }
  for (int j = 0; j < v; ++j)
    layout.budget_slack.push_back(
        builder.add_integer(VarFamily::kSlack, {constraint++}, bits_for(params.r)));

  for (int i = 0; i < m; ++i) builder.add_linear(layout.z[i], -1.0);

  for (int i = 0; i < m; ++i) {
    const auto& cov = instance.coverage(i);
    LinearExpr expr;
    expr.add(layout.z[i], 1).add(layout.coverage_slack[i].expr());
    for (std::size_t slot = 0; slot < cov.size(); ++slot)
      for (int k = 0; k < n; ++k)
        if (covered[i][slot][k]) expr.add(layout.x[cov[slot]][k], -1);
    builder.add_equality("covered(" + std::to_string(i) + ")", expr, lambda);
  }
  for (int j = 0; j < v; ++j) {
    LinearExpr expr(-params.r);
    for (int k = 0; k < n; ++k) expr.add(layout.x[j][k], 1);
    expr.add(layout.budget_slack[j].expr());
    builder.add_equality("beam_budget(" + std::to_string(j) + ")", expr, lambda);
  }

  return SimplifiedModel{builder.finish(), std::move(layout), params};
}

BitCount bit_count(long long m, long long n, long long v, long long r) {
  if (m <= 0 || n <= 0 || v <= 0 || r <= 0)
    throw std::invalid_argument("bit_count: dimensions must be positive");
  BitCount out;
  out.formula = m + n * v + m * ceil_log2(n * v) + v * ceil_log2(r);
  out.registry = m + n * v + m * bits_for(n * v) + v * bits_for(r);
  return out;
}

DecodedSimplified decode_simplified(std::span<const std::uint8_t> x, const SimplifiedModel& model,
                                    const Instance& instance) {
  if (x.size() != model.registry().size())
    throw std::invalid_argument("decode_simplified: assignment size " + std::to_string(x.size()) +
                                " does not match registry size " +
                                std::to_string(model.registry().size()));
  DecodedSimplified out;
  out.selection = extract_selection(model.registry(), x, instance.cells());
  out.z.reserve(model.layout.z.size());
  int satisfied = 0;
  for (auto idx : model.layout.z) {
    out.z.push_back(x[idx]);
    satisfied += x[idx];
  }
  out.energy = energy(model.qubo(), x);
  out.penalty_residual = out.energy + satisfied;
  return out;
}

}  // namespace mbsq
