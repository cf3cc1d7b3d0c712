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

#include "pirep/theorems.hpp"

#include <nlohmann/json.hpp>

#include "pirep/concavity.hpp"
#include "pirep/generators.hpp"
#include "pirep/parallel.hpp"
#include "pirep/represent.hpp"
#include "pirep/rng.hpp"
#include "pirep/rules.hpp"

namespace pirep::theorems {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxStoredFailures = 3;

void record_failure(Leg& leg, ordered_json doc) {
  ++leg.failures;
  if (leg.failure_samples.size() < kMaxStoredFailures)
    leg.failure_samples.push_back(doc.dump());
}

ordered_json rule_failure(const ChoiceRule& rule, const Witness* witness) {
  ordered_json doc;
  doc["rule"] = ordered_json::parse(serialize_rule(rule));
  if (witness) doc["witness"] = ordered_json::parse(violation_document(*witness));
  return doc;
}

ordered_json table_failure(const UtilityTable& table, const Witness* witness) {
  ordered_json doc;
  doc["utility"] = ordered_json::parse(serialize_utility(table));
  if (witness) doc["witness"] = ordered_json::parse(violation_document(*witness));
  return doc;
}

void require_enumerable(int n) {
  if (n < 1 || n > 3)
    throw InputError("TooLarge", "exhaustive verification requires n <= 3; got " +
                                     std::to_string(n));
}

// Scaled laminar table with small additive noise: usually still ordinally
// concave, usually no longer M♮-concave, values frequently untied.
UtilityTable perturbed_laminar_table(int n, Rng& rng) {
  UtilityTable table = gen::laminar_table(
      gen::random_laminar_family(gen::default_universe(n), rng, /*strict_tiebreak=*/false));
  for (auto& v : table.values) v = v * 16 + Rational(static_cast<long>(rng.below(3)));
  return table;
}

// One draw toward an ordinally concave, tie-free table, or nullopt if the
// draw fails either filter. Tied draws are discarded, never perturbed: the
// converse legs quantify over rationalizing functions only.
std::optional<std::pair<UtilityTable, ChoiceRule>> draw_oc_table(int n, std::uint64_t draw_index,
                                                                 Rng& rng) {
  UtilityTable table = (n <= 4 && draw_index % 2 == 0)
                           ? gen::random_rank_table(n, rng)
                           : perturbed_laminar_table(n, rng);
  if (!concavity::is_ordinally_concave(table)) return std::nullopt;
  auto induced = concavity::induce_choice(table);
  if (!induced.ok()) return std::nullopt;
  return std::make_pair(std::move(table), std::move(*induced.rule));
}

// Chunked scan over the full rule enumeration with deterministic merging.
template <class PerRule>
void scan_all_rules(int n, unsigned threads, PerRule per_rule) {
  const std::uint64_t total = gen::rule_count(n);
  parallel_chunks(total, threads, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) per_rule(gen::rule_by_index(n, i));
  });
}

struct ExhaustiveBuckets {
  std::vector<ChoiceRule> pi_rules;      // in enumeration order
  std::vector<ChoiceRule> pi_lad_rules;  // subset of the above
  std::uint64_t total = 0;
};

ExhaustiveBuckets collect_pi_rules(int n, unsigned threads) {
  const std::uint64_t total = gen::rule_count(n);
  const unsigned chunks = clamp_threads(threads);
  std::vector<std::vector<std::pair<ChoiceRule, bool>>> found(chunks);  // (rule, lad)
  parallel_chunks(total, threads, [&](unsigned chunk, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      ChoiceRule rule = gen::rule_by_index(n, i);
      if (rules::is_path_independent(rule)) {
        const bool lad = rules::satisfies_lad(rule);
        found[chunk].emplace_back(std::move(rule), lad);
      }
    }
  });
  ExhaustiveBuckets out;
  out.total = total;
  for (auto& chunk : found)
    for (auto& [rule, lad] : chunk) {
      if (lad) out.pi_lad_rules.push_back(rule);
      out.pi_rules.push_back(std::move(rule));
    }
  return out;
}

}  // namespace

std::string report_json(const Report& report) {
  ordered_json doc;
  doc["harness"] = report.harness;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  doc["params"] = std::move(params);
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : report.counts) counts[k] = v;
  doc["counts"] = std::move(counts);
  ordered_json legs = ordered_json::array();
  for (const auto& leg : report.legs) {
    ordered_json l;
    l["name"] = leg.name;
    l["checked"] = leg.checked;
    l["failures"] = leg.failures;
    ordered_json samples = ordered_json::array();
    for (const auto& s : leg.failure_samples) samples.push_back(ordered_json::parse(s));
    l["failure_samples"] = std::move(samples);
    legs.push_back(std::move(l));
  }
  doc["legs"] = std::move(legs);
  doc["ok"] = report.ok();
  return doc.dump() + "\n";
}

Report verify_theorem1(int n, bool exhaustive, std::size_t samples, std::uint64_t seed,
                       unsigned threads) {
  Report report;
  report.harness = "theorem1";
  report.params = {{"n", std::to_string(n)},
                   {"mode", exhaustive ? "exhaustive" : "sampled"},
                   {"samples", std::to_string(samples)},
                   {"seed", std::to_string(seed)}};

  Leg rationalize{"represent-rationalizes-rule", 0, 0, {}};
  Leg oc{"represent-ordinally-concave", 0, 0, {}};
  Leg ocplus{"represent-ordinally-concave-plus", 0, 0, {}};
  Leg converse{"induced-rule-of-oc-table-path-independent", 0, 0, {}};

  std::vector<ChoiceRule> pi_rules;
  std::uint64_t total_rules = 0;
  if (exhaustive) {
    require_enumerable(n);
    auto buckets = collect_pi_rules(n, threads);
    pi_rules = std::move(buckets.pi_rules);
    total_rules = buckets.total;
  } else {
    auto sample = gen::sample_pi_rules(n, samples, seed);
    pi_rules = std::move(sample.rules);
    report.counts.emplace_back("sample_attempts", sample.attempts);
    report.counts.emplace_back("responsive_mixins", sample.responsive_mixins);
  }

  for (const ChoiceRule& rule : pi_rules) {
    const rep::Representation built = rep::represent(rule, rep::default_epsilon(n), false, threads);
    ++rationalize.checked;
    if (auto w = concavity::find_rationalization_violation(built.utility, rule, threads))
      record_failure(rationalize, rule_failure(rule, &*w));
    ++oc.checked;
    if (auto w = concavity::find_ordinal_concavity_violation(built.utility, threads))
      record_failure(oc, rule_failure(rule, &*w));
    ++ocplus.checked;
    if (auto w = concavity::find_ordinal_concavity_plus_violation(built.utility, threads))
      record_failure(ocplus, rule_failure(rule, &*w));
  }

  // Converse leg: sampled ordinally concave tables with tie-free argmax.
  Rng rng(derive_seed(seed, 0xc0711ull));
  const std::uint64_t budget = static_cast<std::uint64_t>(samples) * 500;
  std::uint64_t draws = 0;
  for (std::uint64_t i = 0; i < budget && converse.checked < samples; ++i) {
    ++draws;
    auto drawn = draw_oc_table(n, i, rng);
    if (!drawn) continue;
    ++converse.checked;
    if (auto w = rules::find_path_independence_violation(drawn->second, threads))
      record_failure(converse, table_failure(drawn->first, &*w));
  }

  if (exhaustive) report.counts.emplace_back("rules_total", total_rules);
  report.counts.emplace_back("pi_rules", pi_rules.size());
  report.counts.emplace_back("converse_draws", draws);
  report.legs = {rationalize, oc, ocplus, converse};
  return report;
}

Report verify_theorem2(int n, bool exhaustive, std::size_t samples, std::uint64_t seed,
                       unsigned threads) {
  Report report;
  report.harness = "theorem2";
  report.params = {{"n", std::to_string(n)},
                   {"mode", exhaustive ? "exhaustive" : "sampled"},
                   {"samples", std::to_string(samples)},
                   {"seed", std::to_string(seed)}};

  Leg oc{"pi-lad-represent-ordinally-concave", 0, 0, {}};
  Leg src{"pi-lad-represent-size-restricted", 0, 0, {}};
  Leg contrapositive{"pi-without-lad-represent-fails-size-restricted", 0, 0, {}};
  Leg converse{"induced-rule-of-oc-src-table-pi-lad", 0, 0, {}};

  std::vector<ChoiceRule> pi_rules;
  std::uint64_t total_rules = 0;
  if (exhaustive) {
    require_enumerable(n);
    auto buckets = collect_pi_rules(n, threads);
    pi_rules = std::move(buckets.pi_rules);
    total_rules = buckets.total;
  } else {
    auto sample = gen::sample_pi_rules(n, samples, seed);
    pi_rules = std::move(sample.rules);
    report.counts.emplace_back("sample_attempts", sample.attempts);
  }

  std::uint64_t lad_count = 0;
  for (const ChoiceRule& rule : pi_rules) {
    const rep::Representation built = rep::represent(rule, rep::default_epsilon(n), false, threads);
    if (rules::satisfies_lad(rule, threads)) {
      ++lad_count;
      ++oc.checked;
      if (auto w = concavity::find_ordinal_concavity_violation(built.utility, threads))
        record_failure(oc, rule_failure(rule, &*w));
      ++src.checked;
      if (auto w = concavity::find_size_restricted_concavity_violation(built.utility, threads))
        record_failure(src, rule_failure(rule, &*w));
    } else {
      ++contrapositive.checked;
      if (!concavity::find_size_restricted_concavity_violation(built.utility, threads))
        record_failure(contrapositive, rule_failure(rule, nullptr));
    }
  }

  Rng rng(derive_seed(seed, 0xc0722ull));
  const std::uint64_t budget = static_cast<std::uint64_t>(samples) * 500;
  std::uint64_t draws = 0;
  for (std::uint64_t i = 0; i < budget && converse.checked < samples; ++i) {
    ++draws;
    auto drawn = draw_oc_table(n, i, rng);
    if (!drawn) continue;
    if (!concavity::is_size_restricted_concave(drawn->first)) continue;
    ++converse.checked;
    auto w = rules::find_path_independence_violation(drawn->second, threads);
    if (!w) w = rules::find_lad_violation(drawn->second, threads);
    if (w) record_failure(converse, table_failure(drawn->first, &*w));
  }

  if (exhaustive) report.counts.emplace_back("rules_total", total_rules);
  report.counts.emplace_back("pi_rules", pi_rules.size());
  report.counts.emplace_back("pi_lad_rules", lad_count);
  report.counts.emplace_back("converse_draws", draws);
  report.legs = {oc, src, contrapositive, converse};
  return report;
}

Report verify_prop1(int n, unsigned threads) {
  require_enumerable(n);
  Report report;
  report.harness = "prop1";
  report.params = {{"n", std::to_string(n)}, {"mode", "exhaustive"}};

  const std::uint64_t total = gen::rule_count(n);
  const unsigned chunks = clamp_threads(threads);
  std::vector<Leg> locals(chunks, Leg{"pi-iff-substitutes-and-irc", 0, 0, {}});
  std::vector<std::uint64_t> local_pi(chunks, 0);
  parallel_chunks(total, threads, [&](unsigned chunk, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const ChoiceRule rule = gen::rule_by_index(n, i);
      const bool pi = rules::is_path_independent(rule);
      const bool decomposed = rules::satisfies_substitutes(rule) && rules::satisfies_irc(rule);
      ++locals[chunk].checked;
      if (pi) ++local_pi[chunk];
      if (pi != decomposed) record_failure(locals[chunk], rule_failure(rule, nullptr));
    }
  });
  Leg leg{"pi-iff-substitutes-and-irc", 0, 0, {}};
  std::uint64_t pi_rules = 0;
  for (unsigned c = 0; c < chunks; ++c) {
    leg.checked += locals[c].checked;
    leg.failures += locals[c].failures;
    for (auto& s : locals[c].failure_samples)
      if (leg.failure_samples.size() < kMaxStoredFailures) leg.failure_samples.push_back(s);
    pi_rules += local_pi[c];
  }
  report.counts = {{"rules_total", total}, {"pi_rules", pi_rules}};
  report.legs = {leg};
  return report;
}

Report verify_prop2(int n, std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (n < 1 || n > 6)
    throw InputError("TooLarge", "M♮ valuation verification requires n <= 6; got " +
                                     std::to_string(n));
  Report report;
  report.harness = "prop2";
  report.params = {{"n", std::to_string(n)},
                   {"samples", std::to_string(samples)},
                   {"seed", std::to_string(seed)}};

  Leg oc{"mnatural-implies-ordinal-concavity", 0, 0, {}};
  Leg src{"mnatural-implies-size-restricted-concavity", 0, 0, {}};
  Leg pi{"induced-rule-path-independent", 0, 0, {}};
  Leg lad{"induced-rule-satisfies-lad", 0, 0, {}};
  Leg transform{"argmax-invariant-under-2v-plus-1", 0, 0, {}};

  for (std::size_t i = 0; i < samples; ++i) {
    const UtilityTable table =
        gen::random_laminar_valuation(n, derive_seed(seed, i), /*strict_tiebreak=*/true);
    ++oc.checked;
    if (auto w = concavity::find_ordinal_concavity_violation(table, threads))
      record_failure(oc, table_failure(table, &*w));
    ++src.checked;
    if (auto w = concavity::find_size_restricted_concavity_violation(table, threads))
      record_failure(src, table_failure(table, &*w));

    auto induced = concavity::induce_choice(table);
    if (!induced.ok()) {
      // Strict tie-breaking makes every value distinct; a tie is a bug.
      Witness w = concavity::tie_witness(table, *induced.tie);
      record_failure(pi, table_failure(table, &w));
      continue;
    }
    ++pi.checked;
    if (auto w = rules::find_path_independence_violation(*induced.rule, threads))
      record_failure(pi, table_failure(table, &*w));
    ++lad.checked;
    if (auto w = rules::find_lad_violation(*induced.rule, threads))
      record_failure(lad, table_failure(table, &*w));

    UtilityTable transformed = table;
    for (auto& v : transformed.values) v = v * 2 + 1;
    auto induced2 = concavity::induce_choice(transformed);
    ++transform.checked;
    if (!induced2.ok() || induced2.rule->table != induced.rule->table)
      record_failure(transform, table_failure(table, nullptr));
  }

  report.counts = {{"tables", samples}};
  report.legs = {oc, src, pi, lad, transform};
  return report;
}

}  // namespace pirep::theorems
