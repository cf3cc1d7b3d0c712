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

// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <unistd.h>
#include <vector>

#include "pirep/concavity.hpp"
#include "pirep/core.hpp"
#include "pirep/generators.hpp"
#include "pirep/represent.hpp"
#include "pirep/rng.hpp"
#include "pirep/rules.hpp"
#include "pirep/theorems.hpp"

#include "../support/spawn.hpp"

using namespace pirep;
using testsupport::run;
using testsupport::slurp;
using testsupport::spit;

namespace {

std::string g_cli;
std::string g_fixtures;
std::string g_tmp;

struct Check {
  int id;
  std::string title;
  std::function<bool(std::string&)> body;
};

bool expect(bool condition, const std::string& what, std::string& note) {
  if (!condition && note.empty()) note = what;
  return condition;
}

// --- criterion 1: exhaustive Theorem 1 at n = 3 in under 60 s -------------

bool criterion1(std::string& note) {
  const auto report = theorems::verify_theorem1(3, true, 200, 1, 1);
  bool ok = expect(report.ok(), "harness reported failures", note);
  for (const auto& leg : report.legs)
    if (leg.name.rfind("represent-", 0) == 0)
      ok &= expect(leg.checked == 35, "expected 35 path-independent rules", note);
  return ok;
}

// --- criterion 2: exhaustive Proposition 1 for n <= 3 ---------------------

bool criterion2(std::string& note) {
  for (int n = 1; n <= 3; ++n) {
    const auto report = theorems::verify_prop1(n, 1);
    if (!expect(report.ok(), "mismatch at n = " + std::to_string(n), note)) return false;
  }
  return true;
}

// --- criterion 3: exhaustive Theorem 2 at n = 3 ---------------------------

bool criterion3(std::string& note) {
  const auto report = theorems::verify_theorem2(3, true, 200, 1, 1);
  bool ok = expect(report.ok(), "harness reported failures", note);
  for (const auto& leg : report.legs) {
    if (leg.name == "pi-lad-represent-size-restricted")
      ok &= expect(leg.checked == 32, "expected 32 PI+LAD rules", note);
    if (leg.name == "pi-without-lad-represent-fails-size-restricted")
      ok &= expect(leg.checked == 3, "expected 3 PI-without-LAD rules", note);
  }
  return ok;
}

// --- criterion 4: the bundled fixture end to end through the CLI ----------

bool criterion4(std::string& note) {
  const std::string fixture = g_fixtures + "/footnote.json";
  const auto pi = run(g_cli + " check --rule " + fixture + " --property pi");
  bool ok = expect(pi.exit_code == 0, "check pi should exit 0", note);

  const auto lad = run(g_cli + " check --rule " + fixture + " --property lad");
  ok &= expect(lad.exit_code == 1, "check lad should exit 1", note);
  ok &= expect(lad.out.find("\"X\":\"x,y,z\"") != std::string::npos &&
                   lad.out.find("\"Xprime\":\"y,z\"") != std::string::npos,
               "lad witness should be {y,z} inside {x,y,z}", note);
  ok &= expect(lad.out.find("1 < 2") != std::string::npos, "lad witness sizes should be 2 > 1",
               note);

  const std::string utility = g_tmp + "/c4-utility.json";
  const std::string back = g_tmp + "/c4-rule.json";
  const auto rep_run = run(g_cli + " represent --rule " + fixture + " --out " + utility);
  ok &= expect(rep_run.exit_code == 0, "represent should succeed", note);
  const auto ind_run = run(g_cli + " induce --utility " + utility + " --out " + back);
  ok &= expect(ind_run.exit_code == 0, "induce should succeed", note);
  ok &= expect(slurp(back) == slurp(fixture), "induce(represent) must be byte-exact", note);
  return ok;
}

// --- criterion 5: induce(represent(r)) = r on sampled PI rules, n = 4, 5 --

bool criterion5(std::string& note) {
  for (int n : {4, 5}) {
    const auto sample = gen::sample_pi_rules(n, 200, 50 + n);
    if (!expect(sample.rules.size() == 200, "sampler fell short at n = " + std::to_string(n),
                note))
      return false;
    for (const auto& rule : sample.rules) {
      const auto built = rep::represent(rule);
      const auto induced = concavity::induce_choice(built.utility);
      if (!expect(induced.ok() && induced.rule->table == rule.table,
                  "round-trip failed at n = " + std::to_string(n), note))
        return false;
    }
  }
  return true;
}

// --- criterion 6: Proposition 2 on laminar valuations at n <= 5 -----------

bool criterion6(std::string& note) {
  for (int n : {4, 5}) {
    const auto report = theorems::verify_prop2(n, 100, 60 + n, 1);
    if (!expect(report.ok(), "prop2 failures at n = " + std::to_string(n), note)) return false;
    for (const auto& leg : report.legs)
      if (!expect(leg.checked == 100, "expected 100 tables per leg", note)) return false;
  }
  return true;
}

// --- criterion 7: oracle equivalences ---------------------------------------

bool criterion7(std::string& note) {
  bool ok = true;
  gen::visit_all_rules(3, [&](std::uint64_t, const ChoiceRule& rule) {
    ok &= rules::find_lad_violation(rule).has_value() ==
          rules::find_lad_violation_definitional(rule).has_value();
  });
  if (!expect(ok, "cover vs definitional LAD disagreed at n = 3", note)) return false;

  Rng rng(7001);
  for (int trial = 0; trial < 10000; ++trial) {
    const ChoiceRule rule = gen::random_rule(5, rng);
    if (!expect(rules::find_lad_violation(rule).has_value() ==
                    rules::find_lad_violation_definitional(rule).has_value(),
                "cover vs definitional LAD disagreed at n = 5", note))
      return false;
  }

  Rng table_rng(7002);
  int mnat_true = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    UtilityTable table{gen::default_universe(4), {}};
    switch (trial % 4) {
      case 0:
        table = gen::random_rank_table(4, table_rng);
        break;
      case 1: {
        table.values.resize(16);
        for (auto& v : table.values) v = Rational(table_rng.range(0, 8));
        break;
      }
      case 2:
        table = gen::random_laminar_valuation(4, table_rng.next(), false);
        break;
      default: {
        table = gen::random_laminar_valuation(4, table_rng.next(), false);
        for (auto& v : table.values) v = v * 8 + Rational(table_rng.range(0, 2));
        break;
      }
    }
    const bool full = concavity::is_mnatural_concave(table);
    const bool split = !concavity::find_local_mnatural_violation(table).has_value() &&
                       concavity::satisfies_size_exchange(table);
    if (full) ++mnat_true;
    if (!expect(full == split, "M-natural checker disagreed with its characterization", note))
      return false;
  }
  return expect(mnat_true >= 250, "characterization pool needs M-natural members", note);
}

// --- criterion 8: epsilon invariance and the one-unit band ------------------

bool criterion8(std::string& note) {
  bool ok = true;
  gen::visit_all_rules(3, [&](std::uint64_t, const ChoiceRule& rule) {
    if (!ok || !rules::is_path_independent(rule)) return;
    const auto low = rep::represent(rule, Rational(1, 6));   // 1/(2n)
    const auto high = rep::represent(rule, Rational(1, 4));  // 1/(n+1)
    const auto induced_low = concavity::induce_choice(low.utility);
    const auto induced_high = concavity::induce_choice(high.utility);
    ok &= induced_low.ok() && induced_high.ok() &&
          induced_low.rule->table == induced_high.rule->table &&
          induced_low.rule->table == rule.table;
    for (const auto& built : {low, high})
      for (mask_t x = 0; x < built.utility.values.size(); ++x)
        ok &= built.utility.values[x] <= Rational(built.base[x]) &&
              built.utility.values[x] > Rational(built.base[x]) - 1;
  });
  return expect(ok, "epsilon choice leaked into the induced rule or the band broke", note);
}

// --- criterion 9: the selection trace closes for every PI rule at n = 3 ----

bool criterion9(std::string& note) {
  bool ok = true;
  gen::visit_all_rules(3, [&](std::uint64_t, const ChoiceRule& rule) {
    if (!ok || !rules::is_path_independent(rule)) return;
    for (mask_t base = 1; base < 8; ++base) {
      const auto report = rep::trace_selection(rule, base);
      ok &= report.ok && report.terminal_level >= 1 && report.terminal_level <= 3 &&
            report.maximizer == rule.table[base];
      for (const auto& step : report.steps)
        for (const auto& [name, pass] : step.checks) ok &= pass;
    }
  });
  return expect(ok, "a trace condition failed", note);
}

// --- criterion 10: byte-identical stdout across thread counts --------------

bool criterion10(std::string& note) {
  const std::vector<std::string> commands = {
      g_cli + " verify --theorem 2 --n 3 --exhaustive --seed 9",
      g_cli + " verify --theorem 1 --n 3 --exhaustive --seed 9",
      g_cli + " check --rule " + g_fixtures + "/footnote.json --property lad",
      g_cli + " search --target oc-not-submodular --n 3 --seed 4 --budget 4000",
  };
  for (const auto& command : commands) {
    const auto reference = run(command + " --threads 1");
    if (!expect(reference.exit_code >= 0, "command failed to run", note)) return false;
    for (const std::string threads : {"1", "2", "8"}) {
      const auto again = run(command + " --threads " + threads);
      if (!expect(again.out == reference.out && again.exit_code == reference.exit_code,
                  "stdout changed under --threads " + threads + " for: " + command, note))
        return false;
    }
  }
  // seeded sampling: identical reports and identical written files
  std::string first_report, first_file;
  for (const std::string threads : {"1", "2", "8"}) {
    const std::string dir = g_tmp + "/c10-" + threads;
    const auto sampled = run(g_cli + " sample --family random-pi --n 4 --seed 3 --count 25" +
                             " --threads " + threads + " --out " + dir);
    if (!expect(sampled.exit_code == 0, "sample failed", note)) return false;
    const std::string report = sampled.out.substr(0, sampled.out.find("\"dir\""));
    const std::string file = slurp(dir + "/rule_000024.json");
    if (first_report.empty()) {
      first_report = report;
      first_file = file;
    }
    if (!expect(report == first_report && file == first_file,
                "sampled stream changed under --threads " + threads, note))
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <pirep-binary> <fixtures-dir>\n");
    return 64;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];
  g_tmp = (std::filesystem::temp_directory_path() /
           ("pirep-acceptance-" + std::to_string(::getpid())))
              .string();
  std::filesystem::create_directories(g_tmp);

  const std::vector<Check> checks = {
      {1, "exhaustive Theorem 1 at n=3 (represent rationalizes, OC, OC+), < 60 s", criterion1},
      {2, "exhaustive Proposition 1 at n<=3, < 10 s", criterion2},
      {3, "exhaustive Theorem 2 at n=3 incl. contrapositive leg, < 60 s", criterion3},
      {4, "footnote fixture: check pi / check lad witness / byte-exact round-trip", criterion4},
      {5, "induce(represent(r)) = r for 200 sampled PI rules each at n=4,5, < 5 min", criterion5},
      {6, "Proposition 2 on 100 laminar valuations each at n=4,5 (PI, LAD, OC, SRC)", criterion6},
      {7, "oracle equivalences: LAD cover vs definitional; M-natural vs characterization",
       criterion7},
      {8, "epsilon invariance of induced rules; value stays in (base-1, base]", criterion8},
      {9, "selection trace closes with every condition passing for all PI rules at n=3",
       criterion9},
      {10, "byte-identical stdout across --threads 1, 2, 8 for seeded commands", criterion10},
  };

  const double budgets[] = {0, 60, 10, 60, 0, 300, 0, 0, 0, 0, 0};  // indexed by id, 0 = none

  int failed = 0;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = check.body(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && budgets[check.id] > 0 && seconds > budgets[check.id]) {
      ok = false;
      note = "over time budget";
    }
    std::printf("%s criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", check.id,
                check.title.c_str(), seconds, note.empty() ? "" : " — ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::filesystem::remove_all(g_tmp);
  return failed;
}
