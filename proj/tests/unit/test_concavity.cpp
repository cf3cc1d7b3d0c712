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

#include "pirep/concavity.hpp"
#include "pirep/generators.hpp"
#include "pirep/rng.hpp"
#include "testdata.hpp"

using namespace pirep;

namespace {

UtilityTable cardinality_table(int n) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<Rational> values(count);
  for (mask_t x = 0; x < count; ++x) values[x] = Rational(popcount(x));
  return UtilityTable{gen::default_universe(n), std::move(values)};
}

// Direct global submodularity: u(X∪Y) + u(X∩Y) <= u(X) + u(Y), the oracle
// for the local-form checker.
bool submodular_global(const UtilityTable& u) {
  const auto v = scaled_values(u);
  const std::size_t count = u.universe.table_size();
  for (mask_t x = 0; x < count; ++x)
    for (mask_t y = 0; y < count; ++y)
      if (v[x | y] + v[x & y] > v[x] + v[y]) return false;
  return true;
}

}  // namespace

TEST_CASE("the cardinality table satisfies every concavity notion") {
  const UtilityTable u = cardinality_table(3);
  CHECK(concavity::is_ordinally_concave(u));
  CHECK(concavity::is_ordinally_concave_plus(u));
  CHECK(concavity::is_size_restricted_concave(u));
  CHECK(concavity::is_mnatural_concave(u));
  CHECK(concavity::satisfies_size_exchange(u));
  CHECK(concavity::is_submodular(u));
}

TEST_CASE("ordinal concavity violation reports the canonical triple") {
  const UtilityTable u = testdata::int_table(2, {0, -1, -1, 0});
  const auto w = concavity::find_ordinal_concavity_violation(u);
  REQUIRE(w.has_value());
  CHECK(w->bindings ==
        std::vector<std::pair<std::string, std::string>>{
            {"X", "a,b"}, {"Xprime", ""}, {"x", "a"}});
}

TEST_CASE("a constant table is ordinally concave but not ordinally concave plus") {
  const UtilityTable u = testdata::int_table(2, {0, 0, 0, 0});
  CHECK(concavity::is_ordinally_concave(u));
  const auto w = concavity::find_ordinal_concavity_plus_violation(u);
  REQUIRE(w.has_value());
  CHECK(w->bindings ==
        std::vector<std::pair<std::string, std::string>>{{"X", "a"}, {"Xprime", ""}, {"x", "a"}});
}

TEST_CASE("the inflated pair table fails the exchange inequalities") {
  const UtilityTable u = testdata::int_table(2, {0, 2, 2, 5});
  const auto m = concavity::find_mnatural_concavity_violation(u);
  REQUIRE(m.has_value());
  CHECK(m->bindings ==
        std::vector<std::pair<std::string, std::string>>{
            {"X", "a,b"}, {"Xprime", ""}, {"x", "a"}});
  const auto s = concavity::find_size_exchange_violation(u);
  REQUIRE(s.has_value());
  CHECK(s->bindings ==
        std::vector<std::pair<std::string, std::string>>{{"X", "a,b"}, {"Xprime", ""}});
}

TEST_CASE("squared cardinality is ordinally concave but not submodular") {
  UtilityTable u = testdata::int_table(2, {0, 1, 1, 4});
  CHECK(concavity::is_ordinally_concave(u));
  const auto w = concavity::find_submodularity_violation(u);
  REQUIRE(w.has_value());
  CHECK(w->bindings ==
        std::vector<std::pair<std::string, std::string>>{{"X", ""}, {"x", "a"}, {"y", "b"}});
}

TEST_CASE("additive tables pass the cardinal checks and induce the identity rule") {
  const UtilityTable u = testdata::int_table(3, {0, 3, 2, 5, 1, 4, 3, 6});  // weights 3, 2, 1
  CHECK(concavity::is_mnatural_concave(u));
  CHECK(concavity::is_submodular(u));
  auto induced = concavity::induce_choice(u);
  REQUIRE(induced.ok());
  CHECK(induced.rule->table == testdata::identity_rule(3).table);
}

TEST_CASE("unit-demand tables have tied maximizers") {
  // u(X) = max weight in X with weights a: 2, b: 1
  const UtilityTable u = testdata::int_table(2, {0, 2, 1, 2});
  const auto result = concavity::induce_choice(u);
  REQUIRE(!result.ok());
  CHECK(result.tie->base == 3u);
  CHECK(result.tie->first == 1u);   // {a}
  CHECK(result.tie->second == 3u);  // {a,b}
  const Witness w = concavity::tie_witness(u, *result.tie);
  CHECK(w.bindings ==
        std::vector<std::pair<std::string, std::string>>{
            {"X", "a,b"}, {"S1", "a"}, {"S2", "a,b"}});
}

TEST_CASE("rationalization checks") {
  const UtilityTable card = cardinality_table(2);
  CHECK(concavity::rationalizes(card, testdata::identity_rule(2)));
  const UtilityTable flat = testdata::int_table(1, {0, 0});
  const auto w = concavity::find_rationalization_violation(flat, testdata::identity_rule(1));
  REQUIRE(w.has_value());
  CHECK(w->bindings ==
        std::vector<std::pair<std::string, std::string>>{{"X", "a"}, {"Xprime", ""}});
}

TEST_CASE("ordinal concavity plus implies ordinal concavity") {
  Rng rng(6021);
  int plus_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    UtilityTable u{gen::default_universe(3), {}};
    u.values.resize(8);
    if (trial % 2 == 0) {
      for (auto& v : u.values) v = Rational(rng.range(0, 4));
    } else {
      // additive with positive weights plus mild noise: the strict clause
      // fires on every extension, so these often stay on the plus side
      const long wa = rng.range(4, 9), wb = rng.range(4, 9), wc = rng.range(4, 9);
      for (mask_t x = 0; x < 8; ++x)
        u.values[x] = Rational((x & 1 ? wa : 0) + (x & 2 ? wb : 0) + (x & 4 ? wc : 0) +
                               rng.range(0, 1));
    }
    if (concavity::is_ordinally_concave_plus(u)) {
      ++plus_seen;
      CHECK(concavity::is_ordinally_concave(u));
    }
  }
  CHECK(plus_seen > 0);
}

TEST_CASE("local submodularity equals the global form on random tables") {
  Rng rng(321);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    UtilityTable u{gen::default_universe(3), {}};
    u.values.resize(8);
    for (auto& v : u.values) v = Rational(rng.range(-5, 5));
    const bool local = concavity::is_submodular(u);
    CHECK(local == submodular_global(u));
    if (!local) ++violations;
  }
  CHECK(violations > 0);
}

TEST_CASE("M-natural concavity implies both ordinal notions on laminar tables") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const UtilityTable u = gen::random_laminar_valuation(4, seed, /*strict_tiebreak=*/false);
    CHECK(concavity::is_ordinally_concave(u));
    CHECK(concavity::is_size_restricted_concave(u));
    CHECK(concavity::satisfies_size_exchange(u));
  }
}

TEST_CASE("full M-natural checker agrees with local exchange plus size exchange") {
  Rng rng(777);
  int mnat_true = 0, mnat_false = 0;
  for (int trial = 0; trial < 300; ++trial) {
    UtilityTable u{gen::default_universe(3), {}};
    u.values.resize(8);
    if (trial % 3 == 0) {
      u = gen::random_laminar_valuation(3, rng.next(), false);
    } else {
      for (auto& v : u.values) v = Rational(rng.range(0, 6));
    }
    const bool full = concavity::is_mnatural_concave(u);
    const bool split = !concavity::find_local_mnatural_violation(u).has_value() &&
                       concavity::satisfies_size_exchange(u);
    CHECK(full == split);
    (full ? mnat_true : mnat_false)++;
  }
  CHECK(mnat_true > 0);
  CHECK(mnat_false > 0);
}

TEST_CASE("argmax is invariant under the monotone transform 2v + 1") {
  Rng rng(888);
  for (int trial = 0; trial < 60; ++trial) {
    const UtilityTable u = gen::random_rank_table(3, rng);
    auto before = concavity::induce_choice(u);
    REQUIRE(before.ok());
    UtilityTable g = u;
    for (auto& v : g.values) v = v * 2 + 1;
    auto after = concavity::induce_choice(g);
    REQUIRE(after.ok());
    CHECK(before.rule->table == after.rule->table);
    // and u rationalizes its own induced rule
    CHECK(concavity::rationalizes(u, *before.rule));
  }
}

TEST_CASE("exhaustive scans refuse oversized universes unless overridden") {
  const UtilityTable big = cardinality_table(13);
  CHECK_THROWS_AS(concavity::find_ordinal_concavity_violation(big), InputError);
  // the submodularity scan is only 2^n·n², cheap enough to actually run
  CHECK(!concavity::find_submodularity_violation(big, 1, /*allow_large=*/true).has_value());
}

TEST_CASE("concavity witnesses are thread-count independent") {
  Rng rng(1401);
  // n = 6 pushes the 4^n·n scans onto the parallel path
  for (int trial = 0; trial < 6; ++trial) {
    UtilityTable u{gen::default_universe(6), {}};
    u.values.resize(64);
    for (auto& v : u.values) v = Rational(rng.range(0, 8));
    CHECK(concavity::find_ordinal_concavity_violation(u, 1) ==
          concavity::find_ordinal_concavity_violation(u, 8));
    CHECK(concavity::find_mnatural_concavity_violation(u, 1) ==
          concavity::find_mnatural_concavity_violation(u, 8));
  }
}
