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

#include "pirep/concavity.hpp"

#include <string>

#include "pirep/parallel.hpp"

namespace pirep::concavity {

namespace {

void check_size(const UtilityTable& u, bool allow_large) {
  if (!allow_large && u.n() > kMaxCheckerContracts)
    throw InputError("TooLarge", "refusing an exhaustive 4^n scan at n = " + std::to_string(u.n()) +
                                     " (limit " + std::to_string(kMaxCheckerContracts) +
                                     "); pass the large-scan override to force it");
}

// The "no contract" option in exchange loops: try every x' in cands, then ∅.
// pred(A, B) receives the two exchanged sets; returns true when admissible.
template <class Pred>
bool exchange_exists(mask_t x_set, mask_t xp_set, int x, mask_t cands, Pred pred) {
  const mask_t base_a = x_set & ~bit(x);
  const mask_t base_b = xp_set | bit(x);
  bool found = false;
  for_each_bit(cands, [&](int xp) {
    if (!found && pred(base_a | bit(xp), base_b & ~bit(xp))) found = true;
  });
  return found || pred(base_a, base_b);
}

struct PairDecode {
  mask_t x, xp;
  int elem;
};

PairDecode decode_pair_elem(std::uint64_t rank, int n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t pair = rank / un;
  return PairDecode{static_cast<mask_t>(pair >> n),
                    static_cast<mask_t>(pair & ((std::uint64_t{1} << n) - 1)),
                    static_cast<int>(rank % un)};
}

Witness exchange_witness(const UtilityTable& u, const char* property, mask_t x_set, mask_t xp_set,
                         int x, const std::string& requirement) {
  const Universe& uni = u.universe;
  return Witness{property,
                 {{"X", uni.key(x_set)}, {"Xprime", uni.key(xp_set)}, {"x", uni.label(x)}},
                 "no x' in (X'∖X)∪{∅} " + requirement};
}

}  // namespace

std::optional<Witness> find_ordinal_concavity_violation(const UtilityTable& u, unsigned threads,
                                                        bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t pairs = std::uint64_t{1} << (2 * n);
  const std::uint64_t rank =
      find_first_rank(pairs * static_cast<std::uint64_t>(n), threads, [&](std::uint64_t r) {
        const auto [x_set, xp_set, x] = decode_pair_elem(r, n);
        if (!contains(x_set & ~xp_set, x)) return false;
        return !exchange_exists(x_set, xp_set, x, xp_set & ~x_set, [&](mask_t a, mask_t b) {
          return v[x_set] < v[a] || v[xp_set] < v[b] || (v[x_set] == v[a] && v[xp_set] == v[b]);
        });
      });
  if (rank == kNoRank) return std::nullopt;
  const auto [x_set, xp_set, x] = decode_pair_elem(rank, n);
  return exchange_witness(u, "oc", x_set, xp_set, x,
                          "strictly raises u(X−x+x') or u(X'+x−x'), or keeps both equal");
}

std::optional<Witness> find_ordinal_concavity_plus_violation(const UtilityTable& u,
                                                             unsigned threads, bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t pairs = std::uint64_t{1} << (2 * n);
  const std::uint64_t rank =
      find_first_rank(pairs * static_cast<std::uint64_t>(n), threads, [&](std::uint64_t r) {
        const auto [x_set, xp_set, x] = decode_pair_elem(r, n);
        if (!contains(x_set & ~xp_set, x)) return false;
        if (v[xp_set] < v[xp_set | bit(x)]) return false;
        const mask_t base_a = x_set & ~bit(x);
        bool found = v[x_set] < v[base_a];
        for_each_bit(xp_set & ~x_set, [&](int xp) {
          if (!found && v[x_set] < v[base_a | bit(xp)]) found = true;
        });
        return !found;
      });
  if (rank == kNoRank) return std::nullopt;
  const auto [x_set, xp_set, x] = decode_pair_elem(rank, n);
  return exchange_witness(u, "ocplus", x_set, xp_set, x,
                          "strictly raises u(X−x+x'), and u(X'+x) does not exceed u(X')");
}

std::optional<Witness> find_size_restricted_concavity_violation(const UtilityTable& u,
                                                                unsigned threads,
                                                                bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x_set = static_cast<mask_t>(r >> n);
    const mask_t xp_set = static_cast<mask_t>(r & (side - 1));
    if (popcount(x_set) <= popcount(xp_set)) return false;
    bool found = false;
    for_each_bit(x_set & ~xp_set, [&](int x) {
      if (found) return;
      const mask_t a = x_set & ~bit(x);
      const mask_t b = xp_set | bit(x);
      if (v[x_set] < v[a] || v[xp_set] < v[b] || (v[x_set] == v[a] && v[xp_set] == v[b]))
        found = true;
    });
    return !found;
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x_set = static_cast<mask_t>(rank >> n);
  const mask_t xp_set = static_cast<mask_t>(rank & (side - 1));
  const Universe& uni = u.universe;
  return Witness{"src",
                 {{"X", uni.key(x_set)}, {"Xprime", uni.key(xp_set)}},
                 "no x in X∖X' strictly raises u(X−x) or u(X'+x), or keeps both equal"};
}

std::optional<Witness> find_mnatural_concavity_violation(const UtilityTable& u, unsigned threads,
                                                         bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t pairs = std::uint64_t{1} << (2 * n);
  const std::uint64_t rank =
      find_first_rank(pairs * static_cast<std::uint64_t>(n), threads, [&](std::uint64_t r) {
        const auto [x_set, xp_set, x] = decode_pair_elem(r, n);
        if (!contains(x_set & ~xp_set, x)) return false;
        const BigInt lhs = v[x_set] + v[xp_set];
        return !exchange_exists(x_set, xp_set, x, xp_set & ~x_set,
                                [&](mask_t a, mask_t b) { return lhs <= v[a] + v[b]; });
      });
  if (rank == kNoRank) return std::nullopt;
  const auto [x_set, xp_set, x] = decode_pair_elem(rank, n);
  return exchange_witness(u, "mnat", x_set, xp_set, x,
                          "satisfies u(X)+u(X') <= u(X−x+x')+u(X'+x−x')");
}

std::optional<Witness> find_size_exchange_violation(const UtilityTable& u, unsigned threads,
                                                    bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x_set = static_cast<mask_t>(r >> n);
    const mask_t xp_set = static_cast<mask_t>(r & (side - 1));
    if (popcount(x_set) <= popcount(xp_set)) return false;
    const BigInt lhs = v[x_set] + v[xp_set];
    bool found = false;
    for_each_bit(x_set & ~xp_set, [&](int x) {
      if (!found && lhs <= v[x_set & ~bit(x)] + v[xp_set | bit(x)]) found = true;
    });
    return !found;
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x_set = static_cast<mask_t>(rank >> n);
  const mask_t xp_set = static_cast<mask_t>(rank & (side - 1));
  const Universe& uni = u.universe;
  return Witness{"sizeexch",
                 {{"X", uni.key(x_set)}, {"Xprime", uni.key(xp_set)}},
                 "no x in X∖X' satisfies u(X)+u(X') <= u(X−x)+u(X'+x)"};
}

std::optional<Witness> find_submodularity_violation(const UtilityTable& u, unsigned threads,
                                                    bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t rank = find_first_rank(side * un * un, threads, [&](std::uint64_t r) {
    const mask_t x_set = static_cast<mask_t>(r / (un * un));
    const int x = static_cast<int>((r / un) % un);
    const int y = static_cast<int>(r % un);
    if (x == y || contains(x_set, x) || contains(x_set, y)) return false;
    return v[x_set | bit(x) | bit(y)] + v[x_set] > v[x_set | bit(x)] + v[x_set | bit(y)];
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x_set = static_cast<mask_t>(rank / (un * un));
  const int x = static_cast<int>((rank / un) % un);
  const int y = static_cast<int>(rank % un);
  const Universe& uni = u.universe;
  return Witness{"submodular",
                 {{"X", uni.key(x_set)}, {"x", uni.label(x)}, {"y", uni.label(y)}},
                 "u(X+x+y) + u(X) > u(X+x) + u(X+y)"};
}

std::optional<Witness> find_local_mnatural_violation(const UtilityTable& u, unsigned threads,
                                                     bool allow_large) {
  check_size(u, allow_large);
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t pairs = std::uint64_t{1} << (2 * n);
  const std::uint64_t rank =
      find_first_rank(pairs * static_cast<std::uint64_t>(n), threads, [&](std::uint64_t r) {
        const auto [x_set, xp_set, x] = decode_pair_elem(r, n);
        if (popcount(x_set ^ xp_set) > 3) return false;
        if (!contains(x_set & ~xp_set, x)) return false;
        const BigInt lhs = v[x_set] + v[xp_set];
        return !exchange_exists(x_set, xp_set, x, xp_set & ~x_set,
                                [&](mask_t a, mask_t b) { return lhs <= v[a] + v[b]; });
      });
  if (rank == kNoRank) return std::nullopt;
  const auto [x_set, xp_set, x] = decode_pair_elem(rank, n);
  return exchange_witness(u, "mnat-local", x_set, xp_set, x,
                          "satisfies the exchange inequality on a |X△X'| <= 3 pair");
}

InduceResult induce_choice(const UtilityTable& u) {
  const auto v = scaled_values(u);
  const std::size_t count = u.universe.table_size();
  std::vector<mask_t> table(count);
  for (mask_t x = 0; x < count; ++x) {
    mask_t best = 0;
    mask_t second = 0;
    bool tied = false;
    for_each_subset(x, [&](mask_t s) {
      if (s == 0) return;  // best starts at ∅
      if (v[s] > v[best]) {
        best = s;
        tied = false;
      } else if (v[s] == v[best] && !tied) {
        second = s;
        tied = true;
      }
    });
    if (tied) return InduceResult{std::nullopt, TiedMaximizers{x, best, second}};
    table[x] = best;
  }
  return InduceResult{ChoiceRule{u.universe, std::move(table)}, std::nullopt};
}

Witness tie_witness(const UtilityTable& u, const TiedMaximizers& tie) {
  const Universe& uni = u.universe;
  return Witness{"rationalizable",
                 {{"X", uni.key(tie.base)}, {"S1", uni.key(tie.first)}, {"S2", uni.key(tie.second)}},
                 "both " + uni.pretty(tie.first) + " and " + uni.pretty(tie.second) +
                     " attain the maximum value " + rational_str(u.values[tie.first]) +
                     " over subsets of " + uni.pretty(tie.base)};
}

std::optional<Witness> find_rationalization_violation(const UtilityTable& u,
                                                      const ChoiceRule& rule, unsigned threads) {
  if (u.universe != rule.universe)
    throw InputError("UniverseMismatch", "utility and rule use different universes");
  const int n = u.n();
  const auto v = scaled_values(u);
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t rank = find_first_rank(side * side, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r >> n);
    const mask_t xp = static_cast<mask_t>(r & (side - 1));
    if (xp & ~x) return false;
    if (xp == rule.table[x]) return false;
    return !(v[rule.table[x]] > v[xp]);
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank >> n);
  const mask_t xp = static_cast<mask_t>(rank & (side - 1));
  const Universe& uni = u.universe;
  return Witness{"rationalizes",
                 {{"X", uni.key(x)}, {"Xprime", uni.key(xp)}},
                 "u(C(X)) = " + rational_str(u.values[rule.table[x]]) + " is not above u(X') = " +
                     rational_str(u.values[xp])};
}

}  // namespace pirep::concavity
