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

#include "mbsq/qubo.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mbsq/errors.hpp"

namespace mbsq {

void Qubo::add(std::size_t i, std::size_t j, double coeff) {
  if (i > j) std::swap(i, j);
  if (j >= size_) size_ = j + 1;
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void Qubo::resize(std::size_t size) {
  if (!terms_.empty() && terms_.rbegin()->first.second >= size) {
    for (const auto& [key, value] : terms_)
      if (key.second >= size) throw std::invalid_argument("Qubo::resize would drop terms");
  }
  size_ = size;
}

double Qubo::coefficient(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

void IsingModel::add_coupling(std::size_t i, std::size_t j, double value) {
  if (i == j) throw std::invalid_argument("Ising coupling requires distinct spins");
  if (i > j) std::swap(i, j);
  if (j >= fields_.size()) fields_.resize(j + 1, 0.0);
  if (value == 0.0) return;
  auto [it, inserted] = couplings_.try_emplace({i, j}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) couplings_.erase(it);
  }
}

void IsingModel::add_field(std::size_t i, double value) {
  if (i >= fields_.size()) fields_.resize(i + 1, 0.0);
  fields_[i] += value;
}

bool IsingModel::has_fields() const {
  for (double h : fields_)
    if (h != 0.0) return true;
  return false;
}

double energy(const Qubo& model, std::span<const std::uint8_t> x) {
  if (x.size() != model.size())
    throw std::invalid_argument("energy: assignment length " + std::to_string(x.size()) +
                                " does not match model size " + std::to_string(model.size()));
  double total = model.offset();
  for (const auto& [key, q] : model.terms())
    if (x[key.first] && x[key.second]) total += q;
  return total;
}

double ising_energy(const IsingModel& model, std::span<const std::int8_t> spins) {
  if (spins.size() != model.size())
    throw std::invalid_argument("ising_energy: spin length " + std::to_string(spins.size()) +
                                " does not match model size " + std::to_string(model.size()));
  double total = model.offset();
  for (const auto& [key, j] : model.couplings())
    total -= j * spins[key.first] * spins[key.second];
  const auto& h = model.fields();
  for (std::size_t i = 0; i < h.size(); ++i) total -= h[i] * spins[i];
  return total;
}

IsingModel qubo_to_ising(const Qubo& model) {
  // Q_ii x_i         = Q_ii/2 (σ_i + 1)
  // Q_ij x_i x_j     = Q_ij/4 (σ_i σ_j + σ_i + σ_j + 1)
  IsingModel ising(model.size(), model.offset());
  for (const auto& [key, q] : model.terms()) {
    const auto [i, j] = key;
    if (i == j) {
      ising.add_field(i, -q / 2.0);
      ising.add_offset(q / 2.0);
    } else {
      ising.add_coupling(i, j, -q / 4.0);
      ising.add_field(i, -q / 4.0);
      ising.add_field(j, -q / 4.0);
      ising.add_offset(q / 4.0);
    }
  }
  return ising;
}

SpinConfig to_spins(std::span<const std::uint8_t> x) {
  SpinConfig s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
  return s;
}

Assignment to_bits(std::span<const std::int8_t> spins) {
  Assignment x(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) x[i] = spins[i] > 0 ? 1 : 0;
  return x;
}

namespace {

std::string format_coeff(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

void write_qubo(const Qubo& model, std::ostream& out) {
  out << "# mbsq qubo\n";
  out << "p qubo " << model.size() << ' ' << model.terms().size() << '\n';
  for (const auto& [key, q] : model.terms())
    out << key.first << ' ' << key.second << ' ' << format_coeff(q) << '\n';
  out << "c offset " << format_coeff(model.offset()) << '\n';
}

Qubo read_qubo(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_problem = false;
  std::size_t size = 0, expected_terms = 0, seen_terms = 0;
  Qubo model;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, kind;
      if (!(ls >> p >> kind >> size >> expected_terms) || kind != "qubo")
        throw ParseError("malformed problem line", line_no);
      if (have_problem) throw ParseError("duplicate problem line", line_no);
      have_problem = true;
      model = Qubo(size);
      continue;
    }
    if (line[0] == 'c') {
      std::string c, key;
      double value = 0.0;
      if (!(ls >> c >> key >> value) || key != "offset")
        throw ParseError("malformed offset line", line_no);
      model.add_offset(value);
      continue;
    }
    if (!have_problem) throw ParseError("term before 'p qubo' line", line_no);
    std::size_t i = 0, j = 0;
    double q = 0.0;
    std::string rest;
    if (!(ls >> i >> j >> q) || (ls >> rest)) throw ParseError("malformed term line", line_no);
    if (i > j) throw ParseError("term must satisfy i <= j", line_no);
    if (j >= size) throw ParseError("term index out of range", line_no);
    model.add(i, j, q);
    ++seen_terms;
  }
  if (!have_problem) throw ParseError("missing 'p qubo' line");
  if (seen_terms != expected_terms)
    throw ParseError("expected " + std::to_string(expected_terms) + " terms, found " +
                     std::to_string(seen_terms));
  return model;
}

QuboAdjacency::QuboAdjacency(const Qubo& model)
    : linear(model.size(), 0.0), neighbors(model.size()), offset(model.offset()) {
  for (const auto& [key, q] : model.terms()) {
    const auto [i, j] = key;
    if (i == j) {
      linear[i] += q;
    } else {
      neighbors[i].emplace_back(j, q);
      neighbors[j].emplace_back(i, q);
    }
  }
}

double QuboAdjacency::flip_delta(std::span<const std::uint8_t> x, std::size_t i) const {
  double field = linear[i];
  for (const auto& [j, q] : neighbors[i])
    if (x[j]) field += q;
  return x[i] ? -field : field;
}

}  // namespace mbsq
