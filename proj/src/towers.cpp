/* Copyright 2026 The egypt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "egypt/towers.hpp"

#include "egypt/error.hpp"

namespace egypt {

TowerMultiset::TowerMultiset(std::initializer_list<std::uint64_t> elements) {
  for (auto e : elements) add(Nat(e));
}

TowerMultiset TowerMultiset::from_elements(const std::vector<Nat>& elements) {
  TowerMultiset m;
  for (const auto& e : elements) m.add(e);
  return m;
}

TowerMultiset TowerMultiset::from_towers(const std::vector<std::pair<Nat, Nat>>& towers) {
  TowerMultiset m;
  for (const auto& [e, c] : towers) m.add(e, c);
  return m;
}

void TowerMultiset::add(const Nat& element, const Nat& count) {
  if (element.is_zero()) throw Error(Errc::invalid_argument, "multiset elements must be positive");
  if (count.is_zero()) return;
  auto [it, inserted] = towers_.try_emplace(element, count);
  if (!inserted) it->second += count;
}

void TowerMultiset::remove_one(const Nat& element) {
  auto it = towers_.find(element);
  if (it == towers_.end()) {
    throw Error(Errc::missing_element, "element " + element.to_decimal() + " not in multiset");
  }
  if (it->second.is_one()) {
    towers_.erase(it);
  } else {
    it->second -= Nat(1);
  }
}

Nat TowerMultiset::multiplicity(const Nat& element) const {
  auto it = towers_.find(element);
  return it == towers_.end() ? Nat(0) : it->second;
}

Nat TowerMultiset::total_size() const {
  Nat n;
  for (const auto& [e, c] : towers_) n += c;
  return n;
}

Nat TowerMultiset::max_height() const {
  Nat h;
  for (const auto& [e, c] : towers_) {
    if (c > h) h = c;
  }
  return h;
}

std::vector<Nat> TowerMultiset::support() const {
  std::vector<Nat> out;
  out.reserve(towers_.size());
  for (const auto& [e, c] : towers_) out.push_back(e);
  return out;
}

std::string TowerMultiset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [e, c] : towers_) {
    if (!first) s += ',';
    first = false;
    s += e.to_decimal();
    if (!c.is_one()) s += '^' + c.to_decimal();
  }
  s += '}';
  return s;
}

Rat sigma_of(const TowerMultiset& m) {
  std::vector<UnitTerm> terms;
  terms.reserve(m.distinct_size());
  for (const auto& [e, c] : m) terms.push_back({&e, &c});
  return sum_unit_terms(terms);
}

TowerMultiset stack(const TowerMultiset& a, const TowerMultiset& b) {
  TowerMultiset out = a;
  for (const auto& [e, c] : b) out.add(e, c);
  return out;
}

bool is_simple(const TowerMultiset& m) {
  for (const auto& [e, c] : m) {
    if (!c.is_one()) return false;
  }
  return true;
}

void vital_split_in_place(TowerMultiset& m, const Nat& y) {
  m.remove_one(y);
  Nat next = y + Nat(1);
  Nat star = y * next;
  m.add(next);
  m.add(star);
}

TowerMultiset vital_split(const TowerMultiset& m, const Nat& y) {
  TowerMultiset out = m;
  vital_split_in_place(out, y);
  return out;
}

}  // namespace egypt
