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

#include "pirep/core.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace pirep {

using ordered_json = nlohmann::ordered_json;

namespace {

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("MalformedJson", e.what());
  }
}

Universe universe_from_json(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("universe") || !doc["universe"].is_array())
    throw InputError("MalformedJson", "expected an object with a \"universe\" array");
  std::vector<std::string> labels;
  for (const auto& item : doc["universe"]) {
    if (!item.is_string())
      throw InputError("MalformedJson", "universe entries must be strings");
    labels.push_back(item.get<std::string>());
  }
  return Universe(std::move(labels));
}

const ordered_json& required_object(const ordered_json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_object())
    throw InputError("MalformedJson", std::string("expected a \"") + field + "\" object");
  return doc[field];
}

}  // namespace

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("EmptyUniverse", "universe must contain at least one label");
  if (static_cast<int>(labels_.size()) > kMaxContracts)
    throw InputError("UniverseTooLarge",
                     "universe has " + std::to_string(labels_.size()) + " labels; the cap is " +
                         std::to_string(kMaxContracts));
  for (const auto& l : labels_) {
    if (!valid_label(l))
      throw InputError("BadLabel", "label \"" + l + "\" is empty or contains ',' or whitespace");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw InputError("DuplicateLabel", "label \"" + labels_[i] + "\" appears twice");
}

std::string Universe::key(mask_t set) const {
  std::string out;
  for_each_bit(set, [&](int b) {
    if (!out.empty()) out += ',';
    out += labels_[static_cast<std::size_t>(b)];
  });
  return out;
}

mask_t Universe::parse_key(const std::string& key) const {
  if (key.empty()) return 0;
  mask_t set = 0;
  int last = -1;
  for (const auto& token : split_commas(key)) {
    int found = -1;
    for (int i = 0; i < size(); ++i) {
      if (labels_[static_cast<std::size_t>(i)] == token) {
        found = i;
        break;
      }
    }
    if (found < 0) throw InputError("BadSetKey", "unknown label \"" + token + "\" in \"" + key + "\"");
    if (found <= last)
      throw InputError("BadSetKey", "labels out of canonical order in \"" + key + "\"");
    last = found;
    set |= bit(found);
  }
  return set;
}

std::string Universe::pretty(mask_t set) const { return "{" + key(set) + "}"; }

ChoiceRule parse_rule(const std::string& text) {
  ordered_json doc = parse_document(text);
  Universe universe = universe_from_json(doc);
  const ordered_json& choice = required_object(doc, "choice");
  std::vector<mask_t> table(universe.table_size());
  for (mask_t x = 0; x < table.size(); ++x) {
    const std::string key = universe.key(x);
    if (!choice.contains(key))
      throw InputError("MissingKey", "no choice entry for \"" + key + "\"");
    const auto& value = choice[key];
    if (!value.is_string()) throw InputError("MalformedJson", "choice values must be strings");
    mask_t chosen = universe.parse_key(value.get<std::string>());
    if (chosen & ~x)
      throw InputError("NotASubset", "C(" + universe.pretty(x) + ") = " + universe.pretty(chosen) +
                                         " is not a subset");
    table[x] = chosen;
  }
  if (choice.size() != table.size())
    throw InputError("BadSetKey", "choice table has keys outside the canonical key set");
  return ChoiceRule{std::move(universe), std::move(table)};
}

UtilityTable parse_utility(const std::string& text) {
  ordered_json doc = parse_document(text);
  Universe universe = universe_from_json(doc);
  const ordered_json& values = required_object(doc, "values");
  std::vector<Rational> table(universe.table_size());
  for (mask_t x = 0; x < table.size(); ++x) {
    const std::string key = universe.key(x);
    if (!values.contains(key))
      throw InputError("MissingKey", "no value entry for \"" + key + "\"");
    const auto& value = values[key];
    if (!value.is_string()) throw InputError("MalformedJson", "values must be rational strings");
    table[x] = parse_rational(value.get<std::string>());
  }
  if (values.size() != table.size())
    throw InputError("BadSetKey", "value table has keys outside the canonical key set");
  return UtilityTable{std::move(universe), std::move(table)};
}

std::string serialize_rule(const ChoiceRule& rule) {
  ordered_json doc;
  doc["universe"] = rule.universe.labels();
  ordered_json choice = ordered_json::object();
  for (mask_t x = 0; x < rule.table.size(); ++x)
    choice[rule.universe.key(x)] = rule.universe.key(rule.table[x]);
  doc["choice"] = std::move(choice);
  return doc.dump(2) + "\n";
}

std::string serialize_utility(const UtilityTable& table) {
  ordered_json doc;
  doc["universe"] = table.universe.labels();
  ordered_json values = ordered_json::object();
  for (mask_t x = 0; x < table.values.size(); ++x)
    values[table.universe.key(x)] = rational_str(table.values[x]);
  doc["values"] = std::move(values);
  return doc.dump(2) + "\n";
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return InputError("MalformedRational", "bad rational \"" + text + "\""); };
  const std::size_t slash = text.find('/');
  const bool has_den = slash != std::string::npos;
  const std::string num = has_den ? text.substr(0, slash) : text;
  const std::string den = has_den ? text.substr(slash + 1) : std::string();
  const auto digits_only = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!digits_only(num, true)) throw bad();
  BigInt p(num);
  if (!has_den) return Rational(p);
  if (!digits_only(den, false)) throw bad();
  BigInt q(den);
  if (q == 0) throw InputError("ZeroDenominator", "zero denominator in \"" + text + "\"");
  return Rational(p, q);
}

std::string rational_str(const Rational& v) {
  std::string out = numerator(v).str();
  if (denominator(v) != 1) out += "/" + denominator(v).str();
  return out;
}

std::vector<BigInt> scaled_values(const UtilityTable& table) {
  BigInt common = 1;
  for (const auto& v : table.values) common = lcm(common, BigInt(denominator(v)));
  std::vector<BigInt> out(table.values.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = numerator(table.values[i]) * (common / denominator(table.values[i]));
  return out;
}

std::string holds_document(const std::string& property) {
  ordered_json doc;
  doc["property"] = property;
  doc["holds"] = true;
  return doc.dump() + "\n";
}

std::string violation_document(const Witness& w) {
  ordered_json doc;
  doc["property"] = w.property;
  doc["holds"] = false;
  ordered_json bindings = ordered_json::object();
  for (const auto& [role, value] : w.bindings) bindings[role] = value;
  doc["witness"] = std::move(bindings);
  doc["detail"] = w.detail;
  return doc.dump() + "\n";
}

}  // namespace pirep
