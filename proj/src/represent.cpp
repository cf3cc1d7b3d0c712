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

#include "pirep/represent.hpp"

#include <algorithm>
#include <string>

#include "pirep/parallel.hpp"
#include "pirep/rules.hpp"

namespace pirep::rep {

NotPathIndependent::NotPathIndependent(Witness w)
    : std::runtime_error("rule is not path independent: " + w.detail), witness_(std::move(w)) {}

std::vector<mask_t> elimination_sequence(const ChoiceRule& rule, mask_t x) {
  const int n = rule.n();
  std::vector<mask_t> chain(static_cast<std::size_t>(n));
  mask_t current = rule.universe.full();
  chain[0] = current;
  for (int k = 2; k <= n; ++k) {
    current &= ~(rule.table[current] & ~x);
    chain[static_cast<std::size_t>(k - 1)] = current;
  }
  return chain;
}

EliminationSequences build_elimination_sequences(const ChoiceRule& rule, unsigned threads) {
  const int n = rule.n();
  const std::size_t count = rule.universe.table_size();
  std::vector<mask_t> flat(count * static_cast<std::size_t>(n));
  parallel_chunks(count, threads, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t x = lo; x < hi; ++x) {
      mask_t current = rule.universe.full();
      flat[x * n] = current;
      for (int k = 2; k <= n; ++k) {
        current &= ~(rule.table[current] & ~static_cast<mask_t>(x));
        flat[x * n + (k - 1)] = current;
      }
    }
  });
  return EliminationSequences(n, std::move(flat));
}

std::vector<BigInt> level_weights(const ChoiceRule& rule, const EliminationSequences& seqs,
                                  unsigned threads) {
  const int n = rule.n();
  const std::size_t count = rule.universe.table_size();
  std::vector<BigInt> w(static_cast<std::size_t>(n));
  w[static_cast<std::size_t>(n - 1)] = 1;
  for (int k = n - 1; k >= 1; --k) {
    std::vector<BigInt> chunk_max(clamp_threads(threads), BigInt(0));
    parallel_chunks(count, threads, [&](unsigned chunk, std::uint64_t lo, std::uint64_t hi) {
      BigInt best = 0;
      for (std::uint64_t x = lo; x < hi; ++x) {
        BigInt sum = 0;
        for (int j = k + 1; j <= n; ++j) {
          const mask_t chosen = rule.table[seqs.at(static_cast<mask_t>(x), j)];
          const int overlap = popcount(static_cast<mask_t>(x) & chosen);
          if (overlap > 0) sum += w[static_cast<std::size_t>(j - 1)] * overlap;
        }
        if (sum > best) best = sum;
      }
      chunk_max[chunk] = std::move(best);
    });
    BigInt best = 0;
    for (const auto& b : chunk_max) best = std::max(best, b);
    w[static_cast<std::size_t>(k - 1)] = best + 1;
  }
  return w;
}

std::vector<BigInt> level_weights(const ChoiceRule& rule, unsigned threads) {
  return level_weights(rule, build_elimination_sequences(rule, threads), threads);
}

Rational default_epsilon(int n) { return Rational(1, 2 * n); }

Representation represent(const ChoiceRule& rule, const Rational& epsilon, bool force,
                         unsigned threads) {
  const int n = rule.n();
  if (!(epsilon > 0 && epsilon * n < 1))
    throw InputError("EpsilonOutOfRange", "epsilon must satisfy 0 < ε < 1/n; got " +
                                              rational_str(epsilon) + " at n = " + std::to_string(n));
  auto violation = rules::find_path_independence_violation(rule, threads);
  if (violation && !force) throw NotPathIndependent(*violation);

  const EliminationSequences seqs = build_elimination_sequences(rule, threads);
  std::vector<BigInt> weights = level_weights(rule, seqs, threads);
  const std::size_t count = rule.universe.table_size();

  std::vector<BigInt> base(count);
  std::vector<int> penalty(count, 0);
  std::vector<int> penalty_level(count, 0);
  std::vector<Rational> values(count);
  parallel_chunks(count, threads, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t xi = lo; xi < hi; ++xi) {
      const mask_t x = static_cast<mask_t>(xi);
      BigInt b = 0;
      for (int k = 1; k <= n; ++k) {
        const int overlap = popcount(x & rule.table[seqs.at(x, k)]);
        if (overlap > 0) b += weights[static_cast<std::size_t>(k - 1)] * overlap;
      }
      for (int k = 1; k <= n; ++k) {
        const mask_t chosen = rule.table[seqs.at(x, k)];
        if ((chosen & ~x) == 0) {
          penalty_level[xi] = k;
          penalty[xi] = popcount(x & ~chosen);
          break;
        }
      }
      values[xi] = Rational(b) - epsilon * penalty[xi];
      base[xi] = std::move(b);
    }
  });
  return Representation{UtilityTable{rule.universe, std::move(values)},
                        std::move(weights),
                        std::move(base),
                        std::move(penalty),
                        std::move(penalty_level),
                        epsilon,
                        !violation.has_value()};
}

Representation represent(const ChoiceRule& rule) {
  return represent(rule, default_epsilon(rule.n()));
}

std::optional<Witness> find_elimination_monotonicity_violation(const ChoiceRule& rule,
                                                               unsigned threads) {
  const int n = rule.n();
  const EliminationSequences seqs = build_elimination_sequences(rule, threads);
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t rank = find_first_rank(side * side * un, threads, [&](std::uint64_t r) {
    const mask_t x = static_cast<mask_t>(r / (side * un));
    const mask_t xp = static_cast<mask_t>((r / un) % side);
    const int j = static_cast<int>(r % un) + 1;
    if (x & ~xp) return false;  // need X ⊆ X'
    return (seqs.at(x, j) & ~seqs.at(xp, j)) != 0;
  });
  if (rank == kNoRank) return std::nullopt;
  const mask_t x = static_cast<mask_t>(rank / (side * un));
  const mask_t xp = static_cast<mask_t>((rank / un) % side);
  const int j = static_cast<int>(rank % un) + 1;
  const Universe& u = rule.universe;
  return Witness{"elim-monotone",
                 {{"X", u.key(x)}, {"Xprime", u.key(xp)}, {"k", std::to_string(j)}},
                 "E_X^" + std::to_string(j) + " = " + u.pretty(seqs.at(x, j)) +
                     " is not contained in E_X'^" + std::to_string(j) + " = " +
                     u.pretty(seqs.at(xp, j))};
}

namespace {

// ũ ordering without materializing ε: lexicographic on (base, −penalty).
bool value_greater(const Representation& rep, mask_t a, mask_t b) {
  if (rep.base[a] != rep.base[b]) return rep.base[a] > rep.base[b];
  return rep.penalty[a] < rep.penalty[b];
}

}  // namespace

TraceReport trace_selection(const ChoiceRule& rule, mask_t base_set, unsigned threads) {
  if (base_set == 0) throw InputError("EmptyBaseSet", "the traced base set must be nonempty");
  if (base_set & ~rule.universe.full())
    throw InputError("BadSetKey", "base set is not a subset of the universe");
  if (auto violation = rules::find_path_independence_violation(rule, threads))
    throw NotPathIndependent(*violation);

  const int n = rule.n();
  const Representation rep = represent(rule, default_epsilon(n), false, threads);
  const EliminationSequences seqs = build_elimination_sequences(rule, threads);

  TraceReport report;
  report.base_set = base_set;
  report.maximizer = rule.table[base_set];
  const mask_t maximizer = report.maximizer;

  std::vector<mask_t> candidates;
  for_each_subset(base_set, [&](mask_t s) { candidates.push_back(s); });

  bool all_ok = true;
  for (int k = 1; k <= n; ++k) {
    TraceStep step;
    step.level = k;
    step.availability = seqs.at(base_set, k);
    step.level_choice = rule.table[step.availability];
    step.candidates_before = candidates.size();

    const auto add_check = [&](const std::string& name, bool pass) {
      step.checks.emplace_back(name, pass);
      all_ok = all_ok && pass;
    };

    if ((step.level_choice & ~base_set) == 0) {
      // Terminal case: the level's choice fits inside the base set.
      step.case_label = 1;
      add_check("choice-stabilizes", step.level_choice == maximizer);
      bool unique = true;
      for_each_subset(base_set, [&](mask_t s) {
        if (s != maximizer && !value_greater(rep, maximizer, s)) unique = false;
      });
      add_check("unique-maximum", unique);
      step.candidates_after = 1;
      report.steps.push_back(std::move(step));
      report.terminal_level = k;
      report.ok = all_ok;
      return report;
    }

    // Refinement case.
    step.case_label = 2;

    bool no_penalty = true;
    for (mask_t s : candidates)
      if (rep.penalty_level[s] == k) no_penalty = false;
    add_check("no-penalty-in-candidates", no_penalty);

    int best_overlap = -1;
    for (mask_t s : candidates) best_overlap = std::max(best_overlap, popcount(s & step.level_choice));
    std::vector<mask_t> next;
    for (mask_t s : candidates)
      if (popcount(s & step.level_choice) == best_overlap) next.push_back(s);

    // The refinement keeps exactly those candidates containing the base
    // set's share of the level choice.
    const mask_t shared = base_set & step.level_choice;
    bool superset_form = true;
    {
      std::size_t matched = 0;
      for (mask_t s : candidates)
        if ((shared & ~s) == 0) ++matched;
      if (matched != next.size()) superset_form = false;
      for (mask_t s : next)
        if (shared & ~s) superset_form = false;
    }
    add_check("refinement-is-superset-filter", superset_form);

    add_check("maximizer-survives",
              std::find(next.begin(), next.end(), maximizer) != next.end());

    bool overlap_matches = true;
    for (mask_t s : next)
      if ((s & rule.table[seqs.at(s, k)]) != shared) overlap_matches = false;
    add_check("own-overlap-matches", overlap_matches);

    if (k < n) {
      bool next_level_agrees = true;
      const mask_t base_next = seqs.at(base_set, k + 1);
      for (mask_t s : next)
        if (seqs.at(s, k + 1) != base_next) next_level_agrees = false;
      const bool shrinks = base_next != step.availability && (base_next & ~step.availability) == 0;
      add_check("availability-shrinks", next_level_agrees && shrinks);
    } else {
      // Provably unreachable for path-independent rules: the level-n
      // availability set equals the base set, forcing the terminal case.
      add_check("terminal-by-last-level", false);
    }

    bool separated = true;
    for (mask_t kept : next) {
      for (mask_t s : candidates) {
        const bool dropped = popcount(s & step.level_choice) != best_overlap;
        if (dropped && !(rep.base[kept] > rep.base[s])) separated = false;
      }
    }
    add_check("kept-dominate-dropped", separated);

    step.candidates_after = next.size();
    report.steps.push_back(std::move(step));
    candidates = std::move(next);
    if (k == n) break;
  }

  report.ok = false;  // never reached the terminal case
  return report;
}

}  // namespace pirep::rep
