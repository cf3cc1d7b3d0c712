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
#include <string>
#include <vector>

#include "pirep/core.hpp"

namespace pirep::theorems {

// One universally quantified claim checked over a population. Failures are
// implementation bugs by the underlying results, so the harness stores the
// first few offending objects verbatim for reproduction.
struct Leg {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> failure_samples;  // compact JSON documents
};

struct Report {
  std::string harness;
  std::vector<std::pair<std::string, std::string>> params;   // insertion order
  std::vector<std::pair<std::string, std::uint64_t>> counts;  // insertion order
  std::vector<Leg> legs;

  bool ok() const {
    for (const auto& leg : legs)
      if (leg.failures > 0) return false;
    return true;
  }
};

// Deterministic rendering: no timing, fixed ordering.
std::string report_json(const Report& report);

// Path independence <=> rationalizable by an ordinally concave utility.
// Exhaustive mode enumerates every rule at n <= 3 for the constructive leg;
// sampled mode draws path-independent rules. The converse leg always runs on
// sampled ordinally concave tables with tie-free argmax.
Report verify_theorem1(int n, bool exhaustive, std::size_t samples, std::uint64_t seed,
                       unsigned threads = 1);

// Path independence + law of aggregate demand <=> ordinal concavity +
// size-restricted concavity, plus the contrapositive: the constructed
// utility of a path-independent rule failing LAD must fail size-restricted
// concavity.
Report verify_theorem2(int n, bool exhaustive, std::size_t samples, std::uint64_t seed,
                       unsigned threads = 1);

// Path independence <=> substitutes + irrelevance of rejected contracts,
// exhaustively over all rules at n <= 3.
Report verify_prop1(int n, unsigned threads = 1);

// Rules induced by M♮-concave (laminar) valuations satisfy path independence
// and LAD; the tables also pass the two implied concavity notions, and the
// argmax is invariant under the monotone transform v -> 2v + 1.
Report verify_prop2(int n, std::size_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace pirep::theorems
