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

#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egypt/arith.hpp"

namespace egypt {

/// Finite multiset of positive integers, stored as ascending towers
/// element -> multiplicity. A stored multiplicity is never zero; a tower of
/// height zero is simply absent.
class TowerMultiset {
 public:
  using Map = std::map<Nat, Nat>;
  using const_iterator = Map::const_iterator;

  TowerMultiset() = default;
  /// Simple set from elements; repeated elements stack.
  TowerMultiset(std::initializer_list<std::uint64_t> elements);
  static TowerMultiset from_elements(const std::vector<Nat>& elements);
  static TowerMultiset from_towers(const std::vector<std::pair<Nat, Nat>>& towers);

  /// Adds `count` stories to the tower at `element`.
  void add(const Nat& element, const Nat& count = Nat(1));
  /// Removes one story; throws missing_element if absent.
  void remove_one(const Nat& element);

  Nat multiplicity(const Nat& element) const;
  bool contains(const Nat& element) const { return towers_.count(element) != 0; }
  bool empty() const { return towers_.empty(); }
  std::size_t distinct_size() const { return towers_.size(); }
  /// Total count of stories.
  Nat total_size() const;
  Nat max_height() const;

  const_iterator begin() const { return towers_.begin(); }
  const_iterator end() const { return towers_.end(); }
  const Map& towers() const { return towers_; }

  /// Distinct elements, ascending.
  std::vector<Nat> support() const;

  /// Canonical text, e.g. `{4,5,6^2,12^2,20}`.
  std::string to_string() const;

  friend bool operator==(const TowerMultiset&, const TowerMultiset&) = default;

 private:
  Map towers_;
};

Rat sigma_of(const TowerMultiset& m);
TowerMultiset stack(const TowerMultiset& a, const TowerMultiset& b);
bool is_simple(const TowerMultiset& m);

/// Replaces one occurrence of y by y+1 and y(y+1).
TowerMultiset vital_split(const TowerMultiset& m, const Nat& y);
void vital_split_in_place(TowerMultiset& m, const Nat& y);

}  // namespace egypt
