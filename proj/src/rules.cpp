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

#include "pirep/rules.hpp"

#include <string>

#include "pirep/parallel.hpp"

namespace pirep::rules {

namespace {

std::string size_str(mask_t s) { return std::to_string(popcount(s)); }

}  // namespace

std::optional<Witness> find_path_independence_violation(const ChoiceRule& rule,
                                                        unsigned threads) {
  const int n = rule.n();
  const std::uint64_t side = std::uint64_t{1} << n;
  const auto& c = rule.table;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r >> n);
    const mask_t xp = static_cast<mask_t>(r & (side - 1));
    return c[x | xp] != c[c[x] | xp];
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank >> n);
  const mask_t xp = static_cast<mask_t>(rank & (side - 1));
  const Universe& u = rule.universe;
  return Witness{"pi",
                 {{"X", u.key(x)}, {"Xprime", u.key(xp)}},
                 "C(X∪X') = " + u.pretty(c[x | xp]) + " but C(C(X)∪X') = " + u.pretty(c[c[x] | xp])};
}

std::optional<Witness> find_substitutes_violation(const ChoiceRule& rule, unsigned threads) {
  const int n = rule.n();
  const std::uint64_t side = std::uint64_t{1} << n;
  const auto& c = rule.table;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r >> n);
    const mask_t xp = static_cast<mask_t>(r & (side - 1));
    if (x & ~xp) return false;  // need X ⊆ X'
    return (c[xp] & x & ~c[x]) != 0;
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank >> n);
  const mask_t xp = static_cast<mask_t>(rank & (side - 1));
  const Universe& u = rule.universe;
  return Witness{"subs",
                 {{"X", u.key(x)}, {"Xprime", u.key(xp)}},
                 "C(X')∩X = " + u.pretty(c[xp] & x) + " is not contained in C(X) = " + u.pretty(c[x])};
}

std::optional<Witness> find_irc_violation(const ChoiceRule& rule, unsigned threads) {
  const int n = rule.n();
  const std::uint64_t side = std::uint64_t{1} << n;
  const auto& c = rule.table;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r >> n);
    const mask_t xp = static_cast<mask_t>(r & (side - 1));
    if (x & ~xp) return false;
    if (c[xp] & ~x) return false;  // need C(X') ⊆ X
    return c[x] != c[xp];
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank >> n);
  const mask_t xp = static_cast<mask_t>(rank & (side - 1));
  const Universe& u = rule.universe;
  return Witness{"irc",
                 {{"X", u.key(x)}, {"Xprime", u.key(xp)}},
                 "C(X') = " + u.pretty(c[xp]) + " ⊆ X yet C(X) = " + u.pretty(c[x])};
}

std::optional<Witness> find_lad_violation(const ChoiceRule& rule, unsigned threads) {
  const int n = rule.n();
  const std::uint64_t side = std::uint64_t{1} << n;
  const auto& c = rule.table;
  const std::uint64_t rank =
      find_first_rank(side * static_cast<std::uint64_t>(n), threads, [&](std::uint64_t r) {
        const mask_t x = static_cast<mask_t>(r / static_cast<std::uint64_t>(n));
        const int b = static_cast<int>(r % static_cast<std::uint64_t>(n));
        if (contains(x, b)) return false;
        return popcount(c[x | bit(b)]) < popcount(c[x]);
      });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank / static_cast<std::uint64_t>(n));
  const int b = static_cast<int>(rank % static_cast<std::uint64_t>(n));
  const mask_t larger = x | bit(b);
  const Universe& u = rule.universe;
  return Witness{"lad",
                 {{"X", u.key(larger)}, {"Xprime", u.key(x)}, {"x", u.label(b)}},
                 "|C(" + u.pretty(larger) + ")| = " + size_str(c[larger]) + " < " + size_str(c[x]) +
                     " = |C(" + u.pretty(x) + ")|"};
}

std::optional<Witness> find_lad_violation_definitional(const ChoiceRule& rule, unsigned threads) {
  const int n = rule.n();
  const std::uint64_t side = std::uint64_t{1} << n;
  const auto& c = rule.table;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r >> n);
    const mask_t xp = static_cast<mask_t>(r & (side - 1));
    if (xp & ~x) return false;  // need X ⊇ X'
    return popcount(c[x]) < popcount(c[xp]);
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank >> n);
  const mask_t xp = static_cast<mask_t>(rank & (side - 1));
  const Universe& u = rule.universe;
  return Witness{"lad",
                 {{"X", u.key(x)}, {"Xprime", u.key(xp)}},
                 "|C(" + u.pretty(x) + ")| = " + size_str(c[x]) + " < " + size_str(c[xp]) +
                     " = |C(" + u.pretty(xp) + ")|"};
}

}  // namespace pirep::rules
