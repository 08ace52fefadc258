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

#include "mbsq/builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mbsq {

LinearExpr& LinearExpr::add(const LinearExpr& other, std::int64_t factor) {
  for (const auto& [index, coeff] : other.terms) terms.emplace_back(index, coeff * factor);
  constant += other.constant * factor;
  return *this;
}

LinearExpr LinearExpr::normalized() const {
  std::map<std::size_t, std::int64_t> merged;
  for (const auto& [index, coeff] : terms) merged[index] += coeff;
  LinearExpr out(constant);
  for (const auto& [index, coeff] : merged)
    if (coeff != 0) out.terms.emplace_back(index, coeff);
  return out;
}

std::int64_t LinearExpr::evaluate(std::span<const std::uint8_t> x) const {
  std::int64_t total = constant;
  for (const auto& [index, coeff] : terms)
    if (x[index]) total += coeff;
  return total;
}

std::int64_t LinearExpr::min_value() const {
  std::int64_t total = constant;
  for (const auto& [index, coeff] : normalized().terms) total += std::min<std::int64_t>(coeff, 0);
  return total;
}

std::int64_t LinearExpr::max_value() const {
  std::int64_t total = constant;
  for (const auto& [index, coeff] : normalized().terms) total += std::max<std::int64_t>(coeff, 0);
  return total;
}

LinearExpr BinaryInteger::expr(std::int64_t factor) const {
  LinearExpr e;
  for (std::size_t t = 0; t < bits.size(); ++t) e.add(bits[t], factor * (std::int64_t{1} << t));
  return e;
}

std::int64_t BinaryInteger::decode(std::span<const std::uint8_t> x) const {
  std::int64_t value = 0;
  for (std::size_t t = 0; t < bits.size(); ++t)
    if (x[bits[t]]) value += std::int64_t{1} << t;
  return value;
}

int bits_for(std::int64_t max_value) {
  int width = 0;
  while (max_value > 0) {
    ++width;
    max_value >>= 1;
  }
  return width;
}

std::size_t QuboBuilder::add_variable(VarName name) {
  const auto index = registry_.add(std::move(name));
  qubo_.resize(registry_.size());
  return index;
}

BinaryInteger QuboBuilder::add_integer(VarFamily family, std::vector<int> index, int width) {
  BinaryInteger value;
  for (int t = 0; t < width; ++t) {
    auto bit_index = index;
    bit_index.push_back(t);
    value.bits.push_back(add_variable({family, std::move(bit_index)}));
  }
  return value;
}

void QuboBuilder::check_index(std::size_t index) const {
  if (index >= registry_.size())
    throw std::out_of_range("expression references unregistered variable " +
                            std::to_string(index));
}

void QuboBuilder::add_linear(std::size_t index, double coeff) {
  check_index(index);
  qubo_.add(index, index, coeff);
}

void QuboBuilder::add_quadratic(std::size_t i, std::size_t j, double coeff) {
  check_index(i);
  check_index(j);
  qubo_.add(i, j, coeff);
}

void QuboBuilder::add_squared_penalty(const LinearExpr& expr, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("penalty lambda must be positive");
  for (const auto& [index, coeff] : expr.terms) check_index(index);
  const auto e = expr.normalized();
  const double c = static_cast<double>(e.constant);
  // (Σ a_i x_i + c)² = Σ a_i² x_i + 2 Σ_{i<j} a_i a_j x_i x_j + 2c Σ a_i x_i + c²
  for (std::size_t s = 0; s < e.terms.size(); ++s) {
    const auto [i, ai] = e.terms[s];
    const double a = static_cast<double>(ai);
    qubo_.add(i, i, lambda * (a * a + 2.0 * c * a));
    for (std::size_t u = s + 1; u < e.terms.size(); ++u) {
      const auto [j, aj] = e.terms[u];
      qubo_.add(i, j, lambda * 2.0 * a * static_cast<double>(aj));
    }
  }
  qubo_.add_offset(lambda * c * c);
}

void QuboBuilder::add_equality(std::string label, const LinearExpr& expr, double lambda) {
  add_squared_penalty(expr, lambda);
  penalties_.push_back({std::move(label), expr.normalized(), lambda, {}});
}

void QuboBuilder::add_nonnegative(std::string label, const LinearExpr& expr, double lambda) {
  for (const auto& [index, coeff] : expr.terms) check_index(index);
  if (expr.min_value() >= 0) return;
  const auto upper = std::max<std::int64_t>(expr.max_value(), 0);
  const int width = bits_for(upper);
  const int constraint_id = static_cast<int>(penalties_.size());
  auto slack = add_integer(VarFamily::kSlack, {constraint_id}, width);
  LinearExpr full = expr;
  full.add(slack.expr(-1));
  add_squared_penalty(full, lambda);
  penalties_.push_back({std::move(label), full.normalized(), lambda, slack.bits});
}

double BuiltModel::penalty(std::span<const std::uint8_t> x) const {
  double total = 0.0;
  for (const auto& term : penalties) {
    const auto value = static_cast<double>(term.expr.evaluate(x));
    total += term.lambda * value * value;
  }
  return total;
}

BuiltModel QuboBuilder::finish() {
  qubo_.resize(registry_.size());
  BuiltModel out{std::move(qubo_), std::move(registry_), std::move(penalties_)};
  qubo_ = Qubo();
  registry_ = VarRegistry();
  penalties_.clear();
  return out;
}

}  // namespace mbsq
