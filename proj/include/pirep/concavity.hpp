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

#include <optional>

#include "pirep/core.hpp"

namespace pirep::concavity {

// Exhaustive scans over the stated quantifiers; canonical minimal witnesses.
// Every checker refuses universes above kMaxCheckerContracts unless
// allow_large is set, since the scans are Θ(4^n · n²).
inline constexpr int kMaxCheckerContracts = 12;

// For all X, X' and x ∈ X∖X' there is x' ∈ (X'∖X)∪{∅} such that the value
// strictly rises on one side of the exchange X−x+x' / X'+x−x' or stays equal
// on both.
std::optional<Witness> find_ordinal_concavity_violation(const UtilityTable& u,
                                                        unsigned threads = 1,
                                                        bool allow_large = false);

// Strengthening: either some x' strictly improves X−x+x', or adding x alone
// strictly improves X'.
std::optional<Witness> find_ordinal_concavity_plus_violation(const UtilityTable& u,
                                                             unsigned threads = 1,
                                                             bool allow_large = false);

// For all |X| > |X'| there is x ∈ X∖X' with a strict rise on one side of the
// single-element move or equality on both.
std::optional<Witness> find_size_restricted_concavity_violation(const UtilityTable& u,
                                                                unsigned threads = 1,
                                                                bool allow_large = false);

// u(X) + u(X') <= u(X−x+x') + u(X'+x−x') for some x' ∈ (X'∖X)∪{∅}.
std::optional<Witness> find_mnatural_concavity_violation(const UtilityTable& u,
                                                         unsigned threads = 1,
                                                         bool allow_large = false);

// For all |X| > |X'| some x ∈ X∖X' has u(X) + u(X') <= u(X−x) + u(X'+x).
std::optional<Witness> find_size_exchange_violation(const UtilityTable& u, unsigned threads = 1,
                                                    bool allow_large = false);

// Local form u(X+x+y) + u(X) <= u(X+x) + u(X+y) over all X and x ≠ y ∉ X,
// equivalent to u(X∪Y) + u(X∩Y) <= u(X) + u(Y).
std::optional<Witness> find_submodularity_violation(const UtilityTable& u, unsigned threads = 1,
                                                    bool allow_large = false);

// The exchange of find_mnatural_concavity_violation restricted to pairs with
// |X △ X'| <= 3. Combined with the size-exchange property this gives an
// independent route to the full M♮ checker; the harness cross-checks them.
std::optional<Witness> find_local_mnatural_violation(const UtilityTable& u, unsigned threads = 1,
                                                     bool allow_large = false);

inline bool is_ordinally_concave(const UtilityTable& u, unsigned threads = 1) {
  return !find_ordinal_concavity_violation(u, threads).has_value();
}
inline bool is_ordinally_concave_plus(const UtilityTable& u, unsigned threads = 1) {
  return !find_ordinal_concavity_plus_violation(u, threads).has_value();
}
inline bool is_size_restricted_concave(const UtilityTable& u, unsigned threads = 1) {
  return !find_size_restricted_concavity_violation(u, threads).has_value();
}
inline bool is_mnatural_concave(const UtilityTable& u, unsigned threads = 1) {
  return !find_mnatural_concavity_violation(u, threads).has_value();
}
inline bool satisfies_size_exchange(const UtilityTable& u, unsigned threads = 1) {
  return !find_size_exchange_violation(u, threads).has_value();
}
inline bool is_submodular(const UtilityTable& u, unsigned threads = 1) {
  return !find_submodularity_violation(u, threads).has_value();
}

// Two canonically smallest maximizers of u over subsets of `base`; their
// existence means u rationalizes no rule.
struct TiedMaximizers {
  mask_t base = 0;
  mask_t first = 0;
  mask_t second = 0;
};

struct InduceResult {
  std::optional<ChoiceRule> rule;
  std::optional<TiedMaximizers> tie;
  bool ok() const { return rule.has_value(); }
};

// C(X) = the unique maximizer of u over subsets of X. Ties are a hard error,
// never broken: strict unique maximization is the rationalizability contract.
InduceResult induce_choice(const UtilityTable& u);

Witness tie_witness(const UtilityTable& u, const TiedMaximizers& tie);

// u(C(X)) > u(X') for every X' ⊆ X with X' ≠ C(X). Same universe required.
std::optional<Witness> find_rationalization_violation(const UtilityTable& u,
                                                      const ChoiceRule& rule,
                                                      unsigned threads = 1);

inline bool rationalizes(const UtilityTable& u, const ChoiceRule& rule, unsigned threads = 1) {
  return !find_rationalization_violation(u, rule, threads).has_value();
}

}  // namespace pirep::concavity
