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

#include <doctest.h>

#include <set>

#include "pirep/concavity.hpp"
#include "pirep/generators.hpp"
#include "pirep/rng.hpp"
#include "pirep/rules.hpp"
#include "testdata.hpp"

using namespace pirep;

TEST_CASE("rule enumeration counts, validity, uniqueness, order") {
  CHECK(gen::rule_count(1) == 2);
  CHECK(gen::rule_count(2) == 16);  // product over subsets of 2^|X|
  CHECK(gen::rule_count(3) == 4096);
  CHECK_THROWS_AS(gen::visit_all_rules(4, [](std::uint64_t, const ChoiceRule&) {}), InputError);

  std::set<std::vector<mask_t>> seen;
  std::uint64_t count = 0;
  gen::visit_all_rules(2, [&](std::uint64_t index, const ChoiceRule& rule) {
    CHECK(index == count);
    ++count;
    for (mask_t x = 0; x < rule.table.size(); ++x) CHECK((rule.table[x] & ~x) == 0u);
    CHECK(seen.insert(rule.table).second);  // no duplicates
  });
  CHECK(count == 16);
  // first rule rejects everything, last rule is the identity
  CHECK(gen::rule_by_index(2, 0).table == std::vector<mask_t>{0u, 0u, 0u, 0u});
  CHECK(gen::rule_by_index(2, 15).table == std::vector<mask_t>{0u, 1u, 2u, 3u});
}

TEST_CASE("responsive rules") {
  const Universe u = gen::default_universe(3);
  CHECK(gen::responsive_rule(u, {"a", "b", "c"}, 3).table == testdata::identity_rule(3).table);
  const ChoiceRule top1 = gen::responsive_rule(u, {"a", "b", "c"}, 1);
  CHECK(top1.table[0b110u] == 0b010u);  // best of {b,c} is b
  CHECK(top1.table[0b111u] == 0b001u);
  CHECK(top1.table[0] == 0u);
  const ChoiceRule none = gen::responsive_rule(u, {"c", "a", "b"}, 0);
  for (mask_t x = 0; x < 8; ++x) CHECK(none.table[x] == 0u);

  CHECK_THROWS_AS(gen::responsive_rule(u, {"a", "b"}, 1), InputError);
  CHECK_THROWS_AS(gen::responsive_rule(u, {"a", "b", "b"}, 1), InputError);
  CHECK_THROWS_AS(gen::responsive_rule(u, {"a", "b", "w"}, 1), InputError);
  CHECK_THROWS_AS(gen::responsive_rule(u, {"a", "b", "c"}, 4), InputError);
  CHECK_THROWS_AS(gen::responsive_rule(u, {"a", "b", "c"}, -1), InputError);
}

TEST_CASE("laminar valuations evaluate cells and self-check") {
  const Universe u3 = gen::default_universe(3);
  // single cell over everything, value = overlap count
  gen::LaminarFamily size_fam{u3, {{7u, {BigInt(0), BigInt(1), BigInt(2), BigInt(3)}}}};
  const UtilityTable size_table = gen::laminar_table(size_fam);
  for (mask_t x = 0; x < 8; ++x) CHECK(size_table.values[x] == Rational(popcount(x)));

  // unit-demand-like: 10·min(t,1) + t
  gen::LaminarFamily unit_fam{u3, {{7u, {BigInt(0), BigInt(11), BigInt(12), BigInt(13)}}}};
  const UtilityTable unit_table = gen::laminar_table(unit_fam);
  CHECK(unit_table.values[0b101u] == Rational(12));
  CHECK(concavity::is_mnatural_concave(unit_table));

  // two singleton cells with slope 2 give the additive table of weight 2
  gen::LaminarFamily add_fam{gen::default_universe(2),
                             {{1u, {BigInt(0), BigInt(2)}}, {2u, {BigInt(0), BigInt(2)}}}};
  const UtilityTable add_table = gen::laminar_table(add_fam);
  for (mask_t x = 0; x < 4; ++x) CHECK(add_table.values[x] == Rational(2 * popcount(x)));

  gen::LaminarFamily crossing{u3, {{0b011u, {BigInt(0), BigInt(1), BigInt(1)}},
                                   {0b110u, {BigInt(0), BigInt(1), BigInt(1)}}}};
  CHECK_THROWS_AS(gen::laminar_table(crossing), InputError);

  gen::LaminarFamily convex{u3, {{7u, {BigInt(0), BigInt(1), BigInt(3), BigInt(9)}}}};
  CHECK_THROWS_AS(gen::laminar_table(convex), InputError);
}

TEST_CASE("strict laminar draws have pairwise distinct values") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const UtilityTable t = gen::random_laminar_valuation(4, seed, /*strict_tiebreak=*/true);
    std::set<Rational> values(t.values.begin(), t.values.end());
    CHECK(values.size() == t.values.size());
    CHECK(concavity::is_mnatural_concave(t));
  }
}

TEST_CASE("rank tables are bijections onto 0..2^n-1") {
  Rng rng(11);
  const UtilityTable t = gen::random_rank_table(3, rng);
  std::set<Rational> values(t.values.begin(), t.values.end());
  CHECK(values.size() == 8);
  CHECK(*values.begin() == Rational(0));
  CHECK(*values.rbegin() == Rational(7));
}

TEST_CASE("path-independent sampling is self-checked and deterministic") {
  const gen::PiSample sample = gen::sample_pi_rules(4, 10, 7);
  CHECK(sample.rules.size() == 10);
  for (const auto& rule : sample.rules) CHECK(rules::is_path_independent(rule));

  const gen::PiSample again = gen::sample_pi_rules(4, 10, 7);
  REQUIRE(again.rules.size() == sample.rules.size());
  for (std::size_t i = 0; i < sample.rules.size(); ++i)
    CHECK(serialize_rule(again.rules[i]) == serialize_rule(sample.rules[i]));

  const gen::PiSample other = gen::sample_pi_rules(4, 10, 8);
  bool any_difference = false;
  for (std::size_t i = 0; i < sample.rules.size(); ++i)
    if (!(other.rules[i] == sample.rules[i])) any_difference = true;
  CHECK(any_difference);

  CHECK_THROWS_AS(gen::sample_pi_rules(3, 5, 1), InputError);
}

TEST_CASE("counterexample search emits only checker-certified objects") {
  const auto hit =
      gen::search_counterexample(gen::SearchTarget::kOrdinallyConcaveNotSubmodular, 2, 5, 1000);
  REQUIRE(hit.found);
  CHECK(concavity::is_ordinally_concave(*hit.table));
  CHECK(!concavity::is_submodular(*hit.table));
  REQUIRE(hit.witness.has_value());
  CHECK(hit.witness->property == "submodular");

  const auto none =
      gen::search_counterexample(gen::SearchTarget::kSubmodularNotOrdinallyConcave, 3, 5, 0);
  CHECK(!none.found);
  CHECK(none.attempts == 0);

  const auto repeat =
      gen::search_counterexample(gen::SearchTarget::kOrdinallyConcaveNotSubmodular, 2, 5, 1000);
  CHECK(repeat.found == hit.found);
  CHECK(repeat.attempts == hit.attempts);
  CHECK(serialize_utility(*repeat.table) == serialize_utility(*hit.table));

  CHECK(gen::parse_target("submodular-not-oc") ==
        gen::SearchTarget::kSubmodularNotOrdinallyConcave);
  CHECK_THROWS_AS(gen::parse_target("nonsense"), InputError);
}

TEST_CASE("search finds the withheld-example classes at small n") {
  const auto sub_not_oc =
      gen::search_counterexample(gen::SearchTarget::kSubmodularNotOrdinallyConcave, 3, 5, 20000);
  REQUIRE(sub_not_oc.found);
  CHECK(concavity::is_submodular(*sub_not_oc.table));
  CHECK(!concavity::is_ordinally_concave(*sub_not_oc.table));

  const auto sub_not_pi =
      gen::search_counterexample(gen::SearchTarget::kSubmodularRationalizableNotPi, 3, 5, 20000);
  REQUIRE(sub_not_pi.found);
  CHECK(concavity::is_submodular(*sub_not_pi.table));
  REQUIRE(sub_not_pi.induced.has_value());
  CHECK(!rules::is_path_independent(*sub_not_pi.induced));
  CHECK(concavity::rationalizes(*sub_not_pi.table, *sub_not_pi.induced));

  const auto src_link =
      gen::search_counterexample(gen::SearchTarget::kSizeRestrictedNoLadLink, 3, 5, 20000);
  REQUIRE(src_link.found);
  CHECK(concavity::is_size_restricted_concave(*src_link.table));
  REQUIRE(src_link.induced.has_value());
  // size-restricted concavity alone already forces LAD; the broken link
  // shows up as a path-independence failure
  CHECK(rules::satisfies_lad(*src_link.induced));
  CHECK(!rules::is_path_independent(*src_link.induced));
}
