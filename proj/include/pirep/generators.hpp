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
#include <functional>
#include <optional>
#include <vector>

#include "pirep/core.hpp"
#include "pirep/rng.hpp"

namespace pirep::gen {

// Single-letter universe a, b, c, ... of the given size.
Universe default_universe(int n);

// Number of total choice tables on n contracts: 2^(n·2^(n-1)).
std::uint64_t rule_count(int n);

// Random access into the canonical enumeration: rules ordered
// lexicographically by the tuple (C(∅), C({a}), ...) with values in numeric
// order. index 0 is the all-empty rule, the last index is the identity rule.
ChoiceRule rule_by_index(int n, std::uint64_t index);

// Every valid rule exactly once, canonical order. Throws TooLarge for n > 3.
void visit_all_rules(int n, const std::function<void(std::uint64_t, const ChoiceRule&)>& fn);
std::vector<ChoiceRule> enumerate_rules(int n);

// C(X) = the min(|X|, quota) highest-priority contracts of X. The output is
// self-checked to pass path independence and the law of aggregate demand.
ChoiceRule responsive_rule(const Universe& universe, const std::vector<std::string>& priority,
                           int quota);

// Sum over a laminar family of concave functions of |X ∩ cell|; a standard
// M♮-concave family. values[t] is the cell's value at overlap t and must
// have nonincreasing increments.
struct LaminarCell {
  mask_t members = 0;
  std::vector<BigInt> values;
};

struct LaminarFamily {
  Universe universe;
  std::vector<LaminarCell> cells;
};

bool is_laminar(const std::vector<mask_t>& cells);

// Evaluates the family into a full table. Self-checked M♮-concave for n <= 6
// (a violation is a generator bug, not bad input).
UtilityTable laminar_table(const LaminarFamily& family);

// Random laminar family. With strict_tiebreak the cell functions are scaled
// by 2^n and singleton cells with weight 2^e are added, which keeps the
// family laminar-concave and makes all 2^n values pairwise distinct.
LaminarFamily random_laminar_family(const Universe& universe, Rng& rng, bool strict_tiebreak);
UtilityTable random_laminar_valuation(int n, std::uint64_t seed, bool strict_tiebreak);

// Uniform choice table (independent uniform submask per subset).
ChoiceRule random_rule(int n, Rng& rng);

// Random bijection from subsets to ranks 0..2^n−1; argmax is always unique.
UtilityTable random_rank_table(int n, Rng& rng);

// Path-independent rules drawn by inducing from random rank tables and
// keeping the path-independent ones, with every eighth emission a random
// responsive rule for family diversity. Deterministic under seed.
struct PiSample {
  std::vector<ChoiceRule> rules;
  std::uint64_t attempts = 0;        // random-table draws tried
  std::uint64_t accepted_random = 0;
  std::uint64_t responsive_mixins = 0;
};

PiSample sample_pi_rules(int n, std::size_t count, std::uint64_t seed,
                         std::uint64_t max_attempts = 0);  // 0: 5000 per requested rule

enum class SearchTarget {
  kSubmodularNotOrdinallyConcave,
  kOrdinallyConcaveNotSubmodular,
  kSubmodularRationalizableNotPi,
  kSizeRestrictedNoLadLink,
};

SearchTarget parse_target(const std::string& name);
std::string target_name(SearchTarget target);

// Draws tables from mixed families until the checkers certify a hit or the
// budget runs out. Results are only ever emitted checker-certified.
struct SearchResult {
  bool found = false;
  std::uint64_t attempts = 0;
  std::optional<UtilityTable> table;
  std::optional<ChoiceRule> induced;
  std::vector<std::pair<std::string, bool>> certifications;  // property -> holds
  std::optional<Witness> witness;                            // the violated side
};

SearchResult search_counterexample(SearchTarget target, int n, std::uint64_t seed,
                                   std::uint64_t budget);

}  // namespace pirep::gen
