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

#include "mbsq/registry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

namespace mbsq {

namespace {

constexpr std::array<std::pair<VarFamily, std::string_view>, 9> kTags{{
    {VarFamily::kX, "x"},
    {VarFamily::kZ, "z"},
    {VarFamily::kD, "d"},
    {VarFamily::kP, "p"},
    {VarFamily::kQ, "q"},
    {VarFamily::kABit, "abit"},
    {VarFamily::kBBit, "bbit"},
    {VarFamily::kCBit, "cbit"},
    {VarFamily::kSlack, "slack"},
}};

}  // namespace

std::string_view family_tag(VarFamily family) {
  for (const auto& [f, tag] : kTags)
    if (f == family) return tag;
  return "?";
}

std::string VarName::to_string() const {
  std::string out(family_tag(family));
  out += '(';
  for (std::size_t t = 0; t < index.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(index[t]);
  }
  out += ')';
  return out;
}

std::optional<VarName> VarName::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') return std::nullopt;
  const auto tag = text.substr(0, open);
  auto it = std::find_if(kTags.begin(), kTags.end(), [&](const auto& e) { return e.second == tag; });
  if (it == kTags.end()) return std::nullopt;
  VarName name{it->first, {}};
  auto body = text.substr(open + 1, text.size() - open - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto part = body.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) return std::nullopt;
    name.index.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return name;
}

std::size_t VarRegistry::add(VarName name) {
  const std::size_t index = names_.size();
  auto [it, inserted] = lookup_.emplace(name, index);
  if (!inserted) throw std::invalid_argument("duplicate variable " + name.to_string());
  names_.push_back(std::move(name));
  return index;
}

std::optional<std::size_t> VarRegistry::find(const VarName& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarRegistry::at(const VarName& name) const {
  auto found = find(name);
  if (!found) throw std::out_of_range("unknown variable " + name.to_string());
  return *found;
}

std::size_t VarRegistry::count(VarFamily family) const {
  return static_cast<std::size_t>(std::count_if(
      names_.begin(), names_.end(), [&](const VarName& n) { return n.family == family; }));
}

}  // namespace mbsq
