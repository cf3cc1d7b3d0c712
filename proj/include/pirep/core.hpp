// Copyright 2026 The Authors.
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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pirep/bits.hpp"
#include "pirep/rational.hpp"

namespace pirep {

// Input-side failure with a stable machine-readable code ("MissingKey",
// "NotASubset", "MalformedJson", ...). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Ordered list of contract labels; a label's index is its bit position.
class Universe {
 public:
  static constexpr int kMaxContracts = 20;

  explicit Universe(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  mask_t full() const { return full_mask(size()); }
  std::size_t table_size() const { return std::size_t{1} << size(); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Comma-joined labels in universe order; "" for the empty set. This is the
  // key format of the JSON files and of witness bindings.
  std::string key(mask_t set) const;
  // Inverse of key(); rejects unknown labels and non-canonical orderings.
  mask_t parse_key(const std::string& key) const;
  // "{x,y}" rendering for human-readable detail strings.
  std::string pretty(mask_t set) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Total choice table: chosen(X) is a subset of X for every X.
struct ChoiceRule {
  Universe universe;
  std::vector<mask_t> table;  // indexed by subset mask, size 2^n

  int n() const { return universe.size(); }
  mask_t chosen(mask_t x) const { return table[x]; }
  bool operator==(const ChoiceRule&) const = default;
};

// Total utility table with exact rational values.
struct UtilityTable {
  Universe universe;
  std::vector<Rational> values;  // indexed by subset mask, size 2^n

  int n() const { return universe.size(); }
  const Rational& value(mask_t x) const { return values[x]; }
  bool operator==(const UtilityTable&) const = default;
};

// Machine-readable record of a falsified universally quantified property.
// Bindings are the canonically smallest falsifying tuple: lexicographic over
// the numeric mask order, roles in the property's quantifier order.
struct Witness {
  std::string property;
  std::vector<std::pair<std::string, std::string>> bindings;
  std::string detail;
  bool operator==(const Witness&) const = default;
};

ChoiceRule parse_rule(const std::string& text);
UtilityTable parse_utility(const std::string& text);

// Canonical byte form: keys in ascending mask order, rationals in lowest
// terms. parse(serialize(x)) == x, and serialize is a left inverse of parse
// on canonical bytes.
std::string serialize_rule(const ChoiceRule& rule);
std::string serialize_utility(const UtilityTable& table);

// Values scaled to a common positive denominator. Scaling by a positive
// integer preserves every order comparison and every two-term sum comparison
// the checkers make, so they can run on integers.
std::vector<BigInt> scaled_values(const UtilityTable& table);

// One-line JSON documents for stdout.
std::string holds_document(const std::string& property);
std::string violation_document(const Witness& w);

}  // namespace pirep
