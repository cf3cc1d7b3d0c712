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
#include <vector>

#include "pirep/core.hpp"

namespace pirep::rep {

// Raised when a construction that is only guaranteed for path-independent
// rules is handed one that is not. Carries the violation found.
class NotPathIndependent : public std::runtime_error {
 public:
  explicit NotPathIndependent(Witness w);
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

// Per base set X, the chain of shrinking availability sets: level 1 is the
// whole universe, and each next level removes the contracts that were chosen
// at the previous level but lie outside X. The chain is nonincreasing and
// never drops below X.
class EliminationSequences {
 public:
  EliminationSequences(int n, std::vector<mask_t> flat) : n_(n), flat_(std::move(flat)) {}

  int levels() const { return n_; }
  // Level k in 1..n for base set X.
  mask_t at(mask_t x, int k) const { return flat_[std::size_t(x) * n_ + (k - 1)]; }

 private:
  int n_;
  std::vector<mask_t> flat_;  // 2^n * n entries, built once and shared
};

EliminationSequences build_elimination_sequences(const ChoiceRule& rule, unsigned threads = 1);

// The chain for a single base set, levels 1..n.
std::vector<mask_t> elimination_sequence(const ChoiceRule& rule, mask_t x);

// Integer weights, one per level, computed by the descending recursion
//   w_n = 1,   w_k = max over X of sum_{j>k} w_j |X ∩ C(E_X^j)| + 1,
// so that a one-contract gain at level k outweighs everything deeper.
std::vector<BigInt> level_weights(const ChoiceRule& rule, const EliminationSequences& seqs,
                                  unsigned threads = 1);
std::vector<BigInt> level_weights(const ChoiceRule& rule, unsigned threads = 1);

// The rationalizing utility for a path-independent rule:
//   base(X)    = sum_k w_k |X ∩ C(E_X^k)|
//   penalty(X) = |X ∖ C(E_X^k*)| at the smallest level k* with C(E_X^k*) ⊆ X
//   value(X)   = base(X) − ε · penalty(X)
// Ordering is the lexicographic order on (base, −penalty) for any ε in
// (0, 1/n), so the induced choices never depend on the ε picked.
struct Representation {
  UtilityTable utility;
  std::vector<BigInt> weights;      // level weights, [k-1] holds w_k
  std::vector<BigInt> base;         // integer part per subset
  std::vector<int> penalty;         // penalty count per subset
  std::vector<int> penalty_level;   // k*, 1-based; 0 when no level qualifies
  Rational epsilon;
  bool path_independent = true;     // false only when forced past the check
};

Rational default_epsilon(int n);  // 1/(2n)

// Throws NotPathIndependent unless the rule passes the check or force is
// set; throws InputError("EpsilonOutOfRange") unless 0 < ε < 1/n.
Representation represent(const ChoiceRule& rule, const Rational& epsilon, bool force = false,
                         unsigned threads = 1);
Representation represent(const ChoiceRule& rule);

// E_X^j ⊆ E_X'^j for all X ⊆ X' and every level j. Guaranteed under the
// substitutes condition; scannable for any rule.
std::optional<Witness> find_elimination_monotonicity_violation(const ChoiceRule& rule,
                                                               unsigned threads = 1);

// Step-by-step verification that C(base_set) is isolated as the unique
// maximizer: candidate subsets are refined level by level to the ones with
// the largest overlap with the level's choice, until the level's choice fits
// inside the base set and the terminal uniqueness check fires.
struct TraceStep {
  int level = 0;
  int case_label = 0;  // 1 = terminal, 2 = refinement
  mask_t availability = 0;
  mask_t level_choice = 0;
  std::size_t candidates_before = 0;
  std::size_t candidates_after = 0;
  std::vector<std::pair<std::string, bool>> checks;
};

struct TraceReport {
  mask_t base_set = 0;
  mask_t maximizer = 0;        // C(base_set)
  int terminal_level = 0;      // level at which the terminal case fired
  bool ok = false;             // every per-step condition held
  std::vector<TraceStep> steps;
};

// Throws InputError("EmptyBaseSet") for an empty base set and
// NotPathIndependent for rules failing the hypothesis. A false report marks
// an implementation bug, not bad input: the conditions provably hold for
// path-independent rules.
TraceReport trace_selection(const ChoiceRule& rule, mask_t base_set, unsigned threads = 1);

}  // namespace pirep::rep
