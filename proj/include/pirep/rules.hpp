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

namespace pirep::rules {

// Each checker scans its quantifier space in canonical order and returns the
// lexicographically smallest falsifying tuple, or nullopt when the property
// holds. Results do not depend on the thread count.

// C(X ∪ X') == C(C(X) ∪ X') over all ordered pairs (X, X').
std::optional<Witness> find_path_independence_violation(const ChoiceRule& rule,
                                                        unsigned threads = 1);

// C(X) ⊇ C(X') ∩ X over all nested pairs X ⊆ X'.
std::optional<Witness> find_substitutes_violation(const ChoiceRule& rule, unsigned threads = 1);

// C(X') ⊆ X implies C(X) == C(X') over all nested pairs X ⊆ X'.
std::optional<Witness> find_irc_violation(const ChoiceRule& rule, unsigned threads = 1);

// |C(X + x)| >= |C(X)| over all X and x ∉ X. Equivalent to the nested-pair
// form by walking one covering step at a time; the full-pair form below is
// kept as the independent oracle.
std::optional<Witness> find_lad_violation(const ChoiceRule& rule, unsigned threads = 1);

// |C(X)| >= |C(X')| over all pairs X ⊇ X'.
std::optional<Witness> find_lad_violation_definitional(const ChoiceRule& rule,
                                                       unsigned threads = 1);

inline bool is_path_independent(const ChoiceRule& r, unsigned threads = 1) {
  return !find_path_independence_violation(r, threads).has_value();
}
inline bool satisfies_substitutes(const ChoiceRule& r, unsigned threads = 1) {
  return !find_substitutes_violation(r, threads).has_value();
}
inline bool satisfies_irc(const ChoiceRule& r, unsigned threads = 1) {
  return !find_irc_violation(r, threads).has_value();
}
inline bool satisfies_lad(const ChoiceRule& r, unsigned threads = 1) {
  return !find_lad_violation(r, threads).has_value();
}

}  // namespace pirep::rules
