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

#include "pirep/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pirep/concavity.hpp"
#include "pirep/rules.hpp"

namespace pirep::gen {

Universe default_universe(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return Universe(std::move(labels));
}

std::uint64_t rule_count(int n) {
  // sum of |X| over all subsets is n·2^(n-1)
  return std::uint64_t{1} << (n * (1 << (n - 1)));
}

namespace {

constexpr int kMaxEnumeration = 3;

void check_enumerable(int n) {
  if (n < 1 || n > kMaxEnumeration)
    throw InputError("TooLarge", "exhaustive rule enumeration supports 1 <= n <= " +
                                     std::to_string(kMaxEnumeration) + "; got " + std::to_string(n));
}

// j-th submask of `set` in ascending numeric order: deposit the bits of j
// onto the set bits of `set`, lowest to lowest.
mask_t submask_by_index(mask_t set, std::uint64_t j) {
  mask_t out = 0;
  int t = 0;
  for_each_bit(set, [&](int b) {
    if ((j >> t) & 1u) out |= bit(b);
    ++t;
  });
  return out;
}

}  // namespace

ChoiceRule rule_by_index(int n, std::uint64_t index) {
  check_enumerable(n);
  const std::size_t count = std::size_t{1} << n;
  std::vector<mask_t> table(count);
  // X = 0 is the most significant digit; strides shrink as X grows.
  std::uint64_t stride = rule_count(n);
  for (mask_t x = 0; x < count; ++x) {
    const std::uint64_t radix = std::uint64_t{1} << popcount(x);
    stride /= radix;
    table[x] = submask_by_index(x, (index / stride) % radix);
  }
  return ChoiceRule{default_universe(n), std::move(table)};
}

void visit_all_rules(int n, const std::function<void(std::uint64_t, const ChoiceRule&)>& fn) {
  check_enumerable(n);
  const std::uint64_t total = rule_count(n);
  for (std::uint64_t i = 0; i < total; ++i) fn(i, rule_by_index(n, i));
}

std::vector<ChoiceRule> enumerate_rules(int n) {
  std::vector<ChoiceRule> out;
  out.reserve(rule_count(n));
  visit_all_rules(n, [&](std::uint64_t, const ChoiceRule& r) { out.push_back(r); });
  return out;
}

ChoiceRule responsive_rule(const Universe& universe, const std::vector<std::string>& priority,
                           int quota) {
  const int n = universe.size();
  if (quota < 0 || quota > n)
    throw InputError("BadQuota", "quota must lie in [0, " + std::to_string(n) + "]");
  std::vector<int> order;  // bit indices, highest priority first
  order.reserve(priority.size());
  for (const auto& label : priority) {
    int found = -1;
    for (int i = 0; i < n; ++i)
      if (universe.label(i) == label) found = i;
    if (found < 0) throw InputError("BadPriority", "label \"" + label + "\" is not in the universe");
    if (std::find(order.begin(), order.end(), found) != order.end())
      throw InputError("BadPriority", "label \"" + label + "\" repeats in the priority order");
    order.push_back(found);
  }
  if (static_cast<int>(order.size()) != n)
    throw InputError("BadPriority", "priority order must list every label exactly once");

  const std::size_t count = universe.table_size();
  std::vector<mask_t> table(count, 0);
  for (mask_t x = 1; x < count; ++x) {
    mask_t chosen = 0;
    int taken = 0;
    for (int b : order) {
      if (taken == quota) break;
      if (contains(x, b)) {
        chosen |= bit(b);
        ++taken;
      }
    }
    table[x] = chosen;
  }
  ChoiceRule rule{universe, std::move(table)};
  if (n <= 10) {
    if (!rules::is_path_independent(rule) || !rules::satisfies_lad(rule))
      throw std::logic_error("responsive rule failed its own path-independence/LAD check");
  }
  return rule;
}

bool is_laminar(const std::vector<mask_t>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const mask_t a = cells[i];
      const mask_t b = cells[j];
      const bool disjoint = (a & b) == 0;
      const bool nested = (a & ~b) == 0 || (b & ~a) == 0;
      if (!disjoint && !nested) return false;
    }
  return true;
}

UtilityTable laminar_table(const LaminarFamily& family) {
  std::vector<mask_t> members;
  members.reserve(family.cells.size());
  for (const auto& cell : family.cells) members.push_back(cell.members);
  if (!is_laminar(members))
    throw InputError("NotLaminar", "cells must be pairwise disjoint or nested");
  for (const auto& cell : family.cells) {
    const std::size_t want = static_cast<std::size_t>(popcount(cell.members)) + 1;
    if (cell.values.size() != want)
      throw InputError("CellNotConcave", "cell needs one value per overlap 0..|cell|");
    for (std::size_t t = 2; t < cell.values.size(); ++t) {
      if (cell.values[t] - cell.values[t - 1] > cell.values[t - 1] - cell.values[t - 2])
        throw InputError("CellNotConcave", "cell increments must be nonincreasing");
    }
  }

  const std::size_t count = family.universe.table_size();
  std::vector<Rational> values(count);
  for (mask_t x = 0; x < count; ++x) {
    BigInt total = 0;
    for (const auto& cell : family.cells)
      total += cell.values[static_cast<std::size_t>(popcount(x & cell.members))];
    values[x] = Rational(total);
  }
  UtilityTable table{family.universe, std::move(values)};
  if (family.universe.size() <= 6) {
    if (!concavity::is_mnatural_concave(table))
      throw std::logic_error("laminar valuation failed its own M-natural concavity check");
  }
  return table;
}

namespace {

void add_random_cells(std::vector<mask_t>& cells, const std::vector<int>& block, Rng& rng,
                      int depth) {
  if (block.size() <= 1 || depth > 3 || rng.chance(3, 10)) return;
  const std::size_t cut = 1 + static_cast<std::size_t>(rng.below(block.size() - 1));
  const std::vector<int> left(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(cut));
  const std::vector<int> right(block.begin() + static_cast<std::ptrdiff_t>(cut), block.end());
  for (const auto& part : {left, right}) {
    if (rng.chance(8, 10)) {
      mask_t m = 0;
      for (int b : part) m |= bit(b);
      cells.push_back(m);
      add_random_cells(cells, part, rng, depth + 1);
    }
  }
}

std::vector<BigInt> random_concave_values(int size, Rng& rng) {
  std::vector<BigInt> steps;
  steps.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) steps.emplace_back(rng.range(-3, 7));
  std::sort(steps.begin(), steps.end(), [](const BigInt& a, const BigInt& b) { return a > b; });
  std::vector<BigInt> values{BigInt(0)};
  for (const auto& s : steps) values.push_back(values.back() + s);
  return values;
}

}  // namespace

LaminarFamily random_laminar_family(const Universe& universe, Rng& rng, bool strict_tiebreak) {
  const int n = universe.size();
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  std::vector<mask_t> cells{universe.full()};
  add_random_cells(cells, all, rng, 0);

  LaminarFamily family{universe, {}};
  for (mask_t m : cells)
    family.cells.push_back(LaminarCell{m, random_concave_values(popcount(m), rng)});

  if (strict_tiebreak) {
    const BigInt scale = BigInt(1) << n;
    for (auto& cell : family.cells)
      for (auto& v : cell.values) v *= scale;
    for (int e = 0; e < n; ++e) {
      const BigInt w = BigInt(1) << e;
      family.cells.push_back(LaminarCell{bit(e), {BigInt(0), w}});
    }
  }
  return family;
}

UtilityTable random_laminar_valuation(int n, std::uint64_t seed, bool strict_tiebreak) {
  Rng rng(seed);
  return laminar_table(random_laminar_family(default_universe(n), rng, strict_tiebreak));
}

ChoiceRule random_rule(int n, Rng& rng) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<mask_t> table(count);
  for (mask_t x = 0; x < count; ++x)
    table[x] = submask_by_index(x, rng.below(std::uint64_t{1} << popcount(x)));
  return ChoiceRule{default_universe(n), std::move(table)};
}

UtilityTable random_rank_table(int n, Rng& rng) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<int> ranks(count);
  for (std::size_t i = 0; i < count; ++i) ranks[i] = static_cast<int>(i);
  rng.shuffle(ranks);
  std::vector<Rational> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = Rational(ranks[i]);
  return UtilityTable{default_universe(n), std::move(values)};
}

PiSample sample_pi_rules(int n, std::size_t count, std::uint64_t seed,
                         std::uint64_t max_attempts) {
  if (n < 4 || n > 6)
    throw InputError("BadN", "path-independent sampling supports 4 <= n <= 6; got " +
                                 std::to_string(n));
  if (max_attempts == 0) max_attempts = 5000ull * count;
  Rng rng(derive_seed(seed, 0x70691ull));
  const Universe universe = default_universe(n);

  PiSample out;
  while (out.rules.size() < count && out.attempts < max_attempts) {
    if (out.rules.size() % 8 == 7) {
      std::vector<std::string> priority = universe.labels();
      rng.shuffle(priority);
      const int quota = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      out.rules.push_back(responsive_rule(universe, priority, quota));
      ++out.responsive_mixins;
      continue;
    }
    ++out.attempts;
    const UtilityTable table = random_rank_table(n, rng);
    auto induced = concavity::induce_choice(table);
    if (!induced.ok()) continue;  // rank tables are strict; never happens
    if (rules::is_path_independent(*induced.rule)) {
      out.rules.push_back(std::move(*induced.rule));
      ++out.accepted_random;
    }
  }
  return out;
}

SearchTarget parse_target(const std::string& name) {
  if (name == "submodular-not-oc") return SearchTarget::kSubmodularNotOrdinallyConcave;
  if (name == "oc-not-submodular") return SearchTarget::kOrdinallyConcaveNotSubmodular;
  if (name == "submodular-rationalizable-not-pi")
    return SearchTarget::kSubmodularRationalizableNotPi;
  if (name == "src-no-lad-link") return SearchTarget::kSizeRestrictedNoLadLink;
  throw InputError("BadTarget", "unknown search target \"" + name + "\"");
}

std::string target_name(SearchTarget target) {
  switch (target) {
    case SearchTarget::kSubmodularNotOrdinallyConcave: return "submodular-not-oc";
    case SearchTarget::kOrdinallyConcaveNotSubmodular: return "oc-not-submodular";
    case SearchTarget::kSubmodularRationalizableNotPi: return "submodular-rationalizable-not-pi";
    case SearchTarget::kSizeRestrictedNoLadLink: return "src-no-lad-link";
  }
  throw std::logic_error("unreachable");
}

namespace {

// w(X) = Σ weights − Σ pairwise penalties: submodular for penalties >= 0.
UtilityTable quadratic_submodular_table(int n, Rng& rng) {
  std::vector<BigInt> weights;
  for (int i = 0; i < n; ++i) weights.emplace_back(rng.range(0, 7));
  std::vector<std::vector<BigInt>> penalty(static_cast<std::size_t>(n),
                                           std::vector<BigInt>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) penalty[i][j] = rng.range(0, 4);
  const std::size_t count = std::size_t{1} << n;
  std::vector<Rational> values(count);
  for (mask_t x = 0; x < count; ++x) {
    BigInt v = 0;
    for_each_bit(x, [&](int i) { v += weights[static_cast<std::size_t>(i)]; });
    for (int i = 0; i < n; ++i)
      if (contains(x, i))
        for (int j = i + 1; j < n; ++j)
          if (contains(x, j)) v -= penalty[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    values[x] = Rational(v);
  }
  return UtilityTable{default_universe(n), std::move(values)};
}

UtilityTable small_int_table(int n, Rng& rng) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<Rational> values(count);
  for (std::size_t i = 0; i < count; ++i)
    values[i] = Rational(static_cast<long>(rng.below(count)));
  return UtilityTable{default_universe(n), std::move(values)};
}

// Convex-in-cardinality with additive noise; a frequent source of ordinally
// concave but non-submodular tables.
UtilityTable convex_cardinality_table(int n, Rng& rng) {
  const BigInt c(rng.range(1, 3));
  std::vector<BigInt> noise;
  for (int i = 0; i < n; ++i) noise.emplace_back(rng.range(0, 2));
  const std::size_t count = std::size_t{1} << n;
  std::vector<Rational> values(count);
  for (mask_t x = 0; x < count; ++x) {
    BigInt v = c * popcount(x) * popcount(x);
    for_each_bit(x, [&](int i) { v += noise[static_cast<std::size_t>(i)]; });
    values[x] = Rational(v);
  }
  return UtilityTable{default_universe(n), std::move(values)};
}

}  // namespace

SearchResult search_counterexample(SearchTarget target, int n, std::uint64_t seed,
                                   std::uint64_t budget) {
  SearchResult result;
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    UtilityTable table = [&] {
      const bool structured = attempt % 2 == 1;
      switch (target) {
        case SearchTarget::kSubmodularNotOrdinallyConcave:
        case SearchTarget::kSubmodularRationalizableNotPi:
          return structured ? quadratic_submodular_table(n, rng) : small_int_table(n, rng);
        case SearchTarget::kOrdinallyConcaveNotSubmodular:
          return structured ? convex_cardinality_table(n, rng) : small_int_table(n, rng);
        case SearchTarget::kSizeRestrictedNoLadLink:
          return structured ? small_int_table(n, rng) : random_rank_table(n, rng);
      }
      throw std::logic_error("unreachable");
    }();
    ++result.attempts;

    switch (target) {
      case SearchTarget::kSubmodularNotOrdinallyConcave: {
        if (!concavity::is_submodular(table)) break;
        auto witness = concavity::find_ordinal_concavity_violation(table);
        if (!witness) break;
        result.found = true;
        result.table = std::move(table);
        result.certifications = {{"submodular", true}, {"oc", false}};
        result.witness = std::move(witness);
        return result;
      }
      case SearchTarget::kOrdinallyConcaveNotSubmodular: {
        if (!concavity::is_ordinally_concave(table)) break;
        auto witness = concavity::find_submodularity_violation(table);
        if (!witness) break;
        result.found = true;
        result.table = std::move(table);
        result.certifications = {{"oc", true}, {"submodular", false}};
        result.witness = std::move(witness);
        return result;
      }
      case SearchTarget::kSubmodularRationalizableNotPi: {
        if (!concavity::is_submodular(table)) break;
        auto induced = concavity::induce_choice(table);
        if (!induced.ok()) break;
        auto witness = rules::find_path_independence_violation(*induced.rule);
        if (!witness) break;
        result.found = true;
        result.table = std::move(table);
        result.induced = std::move(*induced.rule);
        result.certifications = {{"submodular", true}, {"rationalizable", true}, {"pi", false}};
        result.witness = std::move(witness);
        return result;
      }
      case SearchTarget::kSizeRestrictedNoLadLink: {
        // Size-restricted concavity alone never breaks LAD (a strict unique
        // maximizer contradicts every clause at the pair (C(X'), C(X̄))), so
        // the witness that the theorem's other hypotheses are indispensable
        // is an induced rule breaking path independence; LAD is still probed
        // first in case the table is handed an unexpected shape.
        if (!concavity::is_size_restricted_concave(table)) break;
        auto induced = concavity::induce_choice(table);
        if (!induced.ok()) break;
        auto lad = rules::find_lad_violation(*induced.rule);
        auto pi = rules::find_path_independence_violation(*induced.rule);
        if (!lad && !pi) break;
        result.found = true;
        result.table = std::move(table);
        result.induced = std::move(*induced.rule);
        result.certifications = {{"src", true},
                                 {"rationalizable", true},
                                 {"lad", !lad.has_value()},
                                 {"pi", !pi.has_value()}};
        result.witness = lad ? std::move(lad) : std::move(pi);
        return result;
      }
    }
  }
  return result;
}

}  // namespace pirep::gen
