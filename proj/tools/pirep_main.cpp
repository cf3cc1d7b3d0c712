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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pirep/concavity.hpp"
#include "pirep/core.hpp"
#include "pirep/generators.hpp"
#include "pirep/represent.hpp"
#include "pirep/rules.hpp"
#include "pirep/theorems.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace pirep;

// stdout carries exactly one JSON document per invocation; stderr carries
// progress. Exit codes: 0 holds/pass, 1 violated/failed, 2 input or usage.

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("IoError", "cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("IoError", "cannot write \"" + path + "\"");
  out << content;
}

int emit_error(const std::string& code, const std::string& detail) {
  ordered_json doc;
  doc["error"] = code;
  doc["detail"] = detail;
  std::cout << doc.dump() << "\n";
  return 2;
}

ordered_json witness_object(const Witness& w) {
  return ordered_json::parse(violation_document(w));
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool quiet = false;
};

void progress(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << "\n";
}

// ---------------------------------------------------------------- check ----

int run_check(const GlobalOpts& g, const std::string& rule_path, const std::string& utility_path,
              const std::string& property, bool definitional_lad, bool allow_large) {
  const auto run_one = [&](const std::string& prop) -> std::optional<Witness> {
    if (!rule_path.empty()) {
      const ChoiceRule rule = parse_rule(read_file(rule_path));
      if (prop == "pi") return rules::find_path_independence_violation(rule, g.threads);
      if (prop == "subs") return rules::find_substitutes_violation(rule, g.threads);
      if (prop == "irc") return rules::find_irc_violation(rule, g.threads);
      if (prop == "lad")
        return definitional_lad ? rules::find_lad_violation_definitional(rule, g.threads)
                                : rules::find_lad_violation(rule, g.threads);
      throw InputError("Usage", "rule properties are pi|subs|irc|lad|all");
    }
    const UtilityTable table = parse_utility(read_file(utility_path));
    if (prop == "oc") return concavity::find_ordinal_concavity_violation(table, g.threads, allow_large);
    if (prop == "ocplus")
      return concavity::find_ordinal_concavity_plus_violation(table, g.threads, allow_large);
    if (prop == "src")
      return concavity::find_size_restricted_concavity_violation(table, g.threads, allow_large);
    if (prop == "mnat")
      return concavity::find_mnatural_concavity_violation(table, g.threads, allow_large);
    if (prop == "sizeexch")
      return concavity::find_size_exchange_violation(table, g.threads, allow_large);
    if (prop == "submodular")
      return concavity::find_submodularity_violation(table, g.threads, allow_large);
    throw InputError("Usage", "utility properties are oc|ocplus|src|mnat|sizeexch|submodular");
  };

  if (property == "all") {
    if (rule_path.empty()) throw InputError("Usage", "--property all applies to --rule inputs");
    ordered_json results = ordered_json::array();
    bool all_hold = true;
    for (const char* prop : {"pi", "subs", "irc", "lad"}) {
      auto witness = run_one(prop);
      all_hold = all_hold && !witness;
      results.push_back(witness ? witness_object(*witness)
                                : ordered_json::parse(holds_document(prop)));
    }
    ordered_json doc;
    doc["property"] = "all";
    doc["holds"] = all_hold;
    doc["results"] = std::move(results);
    std::cout << doc.dump() << "\n";
    return all_hold ? 0 : 1;
  }

  auto witness = run_one(property);
  if (!witness) {
    std::cout << holds_document(property);
    return 0;
  }
  std::cout << violation_document(*witness);
  return 1;
}

// --------------------------------------------------------------- induce ----

int run_induce(const GlobalOpts&, const std::string& utility_path, const std::string& out_path) {
  const UtilityTable table = parse_utility(read_file(utility_path));
  auto result = concavity::induce_choice(table);
  if (!result.ok()) {
    const Witness w = concavity::tie_witness(table, *result.tie);
    ordered_json doc;
    doc["error"] = "TiedMaximizers";
    doc["witness"] = witness_object(w)["witness"];
    doc["detail"] = w.detail;
    std::cout << doc.dump() << "\n";
    return 1;
  }
  const std::string bytes = serialize_rule(*result.rule);
  if (out_path.empty()) {
    std::cout << bytes;
    return 0;
  }
  write_file(out_path, bytes);
  ordered_json doc;
  doc["ok"] = true;
  doc["out"] = out_path;
  std::cout << doc.dump() << "\n";
  return 0;
}

// ------------------------------------------------------------ represent ----

ordered_json internals_object(const rep::Representation& built) {
  ordered_json internals;
  ordered_json weights = ordered_json::array();
  for (const auto& w : built.weights) weights.push_back(w.str());
  internals["weights"] = std::move(weights);
  internals["epsilon"] = rational_str(built.epsilon);
  ordered_json table = ordered_json::object();
  const Universe& u = built.utility.universe;
  for (mask_t x = 0; x < built.base.size(); ++x) {
    ordered_json row;
    row["base"] = built.base[x].str();
    row["penalty"] = built.penalty[x];
    row["penalty_level"] = built.penalty_level[x];
    table[u.key(x)] = std::move(row);
  }
  internals["table"] = std::move(table);
  return internals;
}

int run_represent(const GlobalOpts& g, const std::string& rule_path, const std::string& out_path,
                  const std::string& epsilon_text, bool force, bool dump_internals) {
  const ChoiceRule rule = parse_rule(read_file(rule_path));
  const Rational eps =
      epsilon_text.empty() ? rep::default_epsilon(rule.n()) : parse_rational(epsilon_text);
  std::optional<rep::Representation> maybe_built;
  try {
    maybe_built = rep::represent(rule, eps, force, g.threads);
  } catch (const rep::NotPathIndependent& e) {
    ordered_json doc;
    doc["error"] = "NotPathIndependent";
    doc["witness"] = witness_object(e.witness())["witness"];
    doc["detail"] = e.witness().detail;
    std::cout << doc.dump() << "\n";
    return 1;
  }
  const rep::Representation& built = *maybe_built;
  if (!built.path_independent)
    progress(g, "warning: rule is not path independent; emitted table carries no guarantees");

  const std::string bytes = serialize_utility(built.utility);
  if (!out_path.empty()) {
    write_file(out_path, bytes);
    ordered_json doc;
    doc["ok"] = true;
    doc["out"] = out_path;
    doc["path_independent"] = built.path_independent;
    if (force) doc["forced"] = true;
    if (dump_internals) doc["internals"] = internals_object(built);
    std::cout << doc.dump() << "\n";
    return 0;
  }
  if (dump_internals || force) {
    ordered_json doc;
    doc["path_independent"] = built.path_independent;
    if (force) doc["forced"] = true;
    doc["utility"] = ordered_json::parse(bytes);
    if (dump_internals) doc["internals"] = internals_object(built);
    std::cout << doc.dump() << "\n";
    return 0;
  }
  std::cout << bytes;
  return 0;
}

// ---------------------------------------------------------------- trace ----

int run_trace(const GlobalOpts& g, const std::string& rule_path, const std::string& set_key) {
  const ChoiceRule rule = parse_rule(read_file(rule_path));
  const mask_t base_set = rule.universe.parse_key(set_key);
  rep::TraceReport report;
  try {
    report = rep::trace_selection(rule, base_set, g.threads);
  } catch (const rep::NotPathIndependent& e) {
    ordered_json doc;
    doc["error"] = "NotPathIndependent";
    doc["witness"] = witness_object(e.witness())["witness"];
    doc["detail"] = e.witness().detail;
    std::cout << doc.dump() << "\n";
    return 1;
  }
  const Universe& u = rule.universe;
  ordered_json doc;
  doc["base_set"] = u.key(report.base_set);
  doc["maximizer"] = u.key(report.maximizer);
  doc["terminal_level"] = report.terminal_level;
  doc["ok"] = report.ok;
  ordered_json steps = ordered_json::array();
  for (const auto& step : report.steps) {
    ordered_json s;
    s["level"] = step.level;
    s["case"] = step.case_label;
    s["availability"] = u.key(step.availability);
    s["choice"] = u.key(step.level_choice);
    s["candidates_before"] = step.candidates_before;
    s["candidates_after"] = step.candidates_after;
    ordered_json checks = ordered_json::object();
    for (const auto& [name, pass] : step.checks) checks[name] = pass;
    s["checks"] = std::move(checks);
    steps.push_back(std::move(s));
  }
  doc["steps"] = std::move(steps);
  std::cout << doc.dump() << "\n";
  return report.ok ? 0 : 1;
}

// ------------------------------------------------------------ enumerate ----

std::string indexed_name(const char* stem, std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%06llu.json", stem,
                static_cast<unsigned long long>(index));
  return buf;
}

int run_enumerate(const GlobalOpts& g, int n, const std::string& filter,
                  const std::string& out_dir) {
  if (filter != "none" && filter != "pi" && filter != "pi-lad")
    throw InputError("Usage", "--filter must be pi|pi-lad|none");
  std::filesystem::create_directories(out_dir);
  std::uint64_t written = 0;
  gen::visit_all_rules(n, [&](std::uint64_t index, const ChoiceRule& rule) {
    if (filter == "pi" && !rules::is_path_independent(rule, g.threads)) return;
    if (filter == "pi-lad" &&
        (!rules::is_path_independent(rule, g.threads) || !rules::satisfies_lad(rule, g.threads)))
      return;
    write_file(out_dir + "/" + indexed_name("rule", index), serialize_rule(rule));
    ++written;
  });
  ordered_json doc;
  doc["n"] = n;
  doc["filter"] = filter;
  doc["total"] = gen::rule_count(n);
  doc["written"] = written;
  doc["dir"] = out_dir;
  std::cout << doc.dump() << "\n";
  return 0;
}

// --------------------------------------------------------------- sample ----

int run_sample(const GlobalOpts& g, const std::string& family, int n, std::size_t count,
               const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  ordered_json doc;
  doc["family"] = family;
  doc["n"] = n;
  doc["seed"] = g.seed;
  doc["requested"] = count;
  if (family == "responsive") {
    Rng rng(derive_seed(g.seed, 0x5e5f0ull));
    const Universe universe = gen::default_universe(n);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::string> priority = universe.labels();
      rng.shuffle(priority);
      const int quota = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      write_file(out_dir + "/" + indexed_name("rule", i),
                 serialize_rule(gen::responsive_rule(universe, priority, quota)));
    }
    doc["written"] = count;
  } else if (family == "laminar") {
    for (std::size_t i = 0; i < count; ++i) {
      const UtilityTable table =
          gen::random_laminar_valuation(n, derive_seed(g.seed, i), /*strict_tiebreak=*/true);
      write_file(out_dir + "/" + indexed_name("utility", i), serialize_utility(table));
    }
    doc["written"] = count;
  } else if (family == "random-pi") {
    auto sample = gen::sample_pi_rules(n, count, g.seed);
    for (std::size_t i = 0; i < sample.rules.size(); ++i)
      write_file(out_dir + "/" + indexed_name("rule", i), serialize_rule(sample.rules[i]));
    doc["written"] = sample.rules.size();
    doc["attempts"] = sample.attempts;
    doc["accepted_random"] = sample.accepted_random;
    doc["responsive_mixins"] = sample.responsive_mixins;
  } else {
    throw InputError("Usage", "--family must be responsive|laminar|random-pi");
  }
  doc["dir"] = out_dir;
  std::cout << doc.dump() << "\n";
  return 0;
}

// --------------------------------------------------------------- search ----

int run_search(const GlobalOpts& g, const std::string& target, int n, std::uint64_t budget) {
  const auto result = gen::search_counterexample(gen::parse_target(target), n, g.seed, budget);
  ordered_json doc;
  doc["target"] = target;
  doc["found"] = result.found;
  doc["attempts"] = result.attempts;
  if (!result.found) {
    doc["reason"] = "BudgetExhausted";
    std::cout << doc.dump() << "\n";
    return 1;
  }
  doc["utility"] = ordered_json::parse(serialize_utility(*result.table));
  if (result.induced) doc["induced_rule"] = ordered_json::parse(serialize_rule(*result.induced));
  ordered_json certs = ordered_json::object();
  for (const auto& [name, holds] : result.certifications) certs[name] = holds;
  doc["certifications"] = std::move(certs);
  if (result.witness) doc["witness"] = witness_object(*result.witness);
  std::cout << doc.dump() << "\n";
  return 0;
}

// --------------------------------------------------------------- verify ----

int run_verify(const GlobalOpts& g, const std::string& which, int n, bool exhaustive_flag,
               bool samples_given, std::size_t samples) {
  const bool exhaustive = exhaustive_flag || (!samples_given && n <= 3);
  theorems::Report report;
  if (which == "1")
    report = theorems::verify_theorem1(n, exhaustive, samples, g.seed, g.threads);
  else if (which == "2")
    report = theorems::verify_theorem2(n, exhaustive, samples, g.seed, g.threads);
  else if (which == "prop1")
    report = theorems::verify_prop1(n, g.threads);
  else if (which == "prop2")
    report = theorems::verify_prop2(n, samples, g.seed, g.threads);
  else
    throw InputError("Usage", "--theorem must be 1|2|prop1|prop2");
  std::cout << theorems::report_json(report);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"path-independent choice rules, their checkers, and rationalizing utilities"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for sampled subcommands");
  app.add_option("--threads", g.threads, "worker threads; never changes output bytes");
  app.add_flag("--quiet", g.quiet, "suppress stderr progress");

  auto* check = app.add_subcommand("check", "decide a property of a rule or utility table");
  std::string rule_path, utility_path, property;
  bool definitional_lad = false, witness_flag = false, allow_large = false;
  check->add_option("--rule", rule_path, "rule JSON file");
  check->add_option("--utility", utility_path, "utility JSON file");
  check->add_option("--property", property, "pi|subs|irc|lad|all or oc|ocplus|src|mnat|sizeexch|submodular")
      ->required();
  check->add_flag("--definitional-lad", definitional_lad, "use the nested-pair LAD oracle");
  check->add_flag("--witness", witness_flag, "emit the canonical witness (already the default)");
  check->add_flag("--allow-large", allow_large, "run exhaustive 4^n scans above n = 12");

  auto* induce = app.add_subcommand("induce", "derive the choice rule a utility table rationalizes");
  std::string induce_utility, induce_out;
  induce->add_option("--utility", induce_utility, "utility JSON file")->required();
  induce->add_option("--out", induce_out, "write the rule here instead of stdout");

  auto* represent = app.add_subcommand("represent", "construct the rationalizing utility of a rule");
  std::string represent_rule, represent_out, epsilon_text;
  bool force = false, dump_internals = false;
  represent->add_option("--rule", represent_rule, "rule JSON file")->required();
  represent->add_option("--out", represent_out, "write the utility here instead of stdout");
  represent->add_option("--epsilon", epsilon_text, "penalty size P/Q with 0 < P/Q < 1/n");
  represent->add_flag("--force", force, "emit a table even for non-path-independent rules");
  represent->add_flag("--dump-internals", dump_internals, "include weights and per-subset internals");

  auto* trace = app.add_subcommand("trace", "step-by-step maximizer isolation for a base set");
  std::string trace_rule, trace_set;
  trace->add_option("--rule", trace_rule, "rule JSON file")->required();
  trace->add_option("--set", trace_set, "base set as comma-joined labels")->required();

  auto* enumerate = app.add_subcommand("enumerate", "write every rule on a small universe");
  int enum_n = 3;
  std::string enum_filter = "none", enum_out;
  enumerate->add_option("--n", enum_n, "universe size (1..3)")->required();
  enumerate->add_option("--filter", enum_filter, "pi|pi-lad|none");
  enumerate->add_option("--out", enum_out, "output directory")->required();

  auto* sample = app.add_subcommand("sample", "draw rules or valuations from a family");
  std::string sample_family, sample_out;
  int sample_n = 4;
  std::size_t sample_count = 10;
  sample->add_option("--family", sample_family, "responsive|laminar|random-pi")->required();
  sample->add_option("--n", sample_n, "universe size")->required();
  sample->add_option("--count", sample_count, "how many to draw");
  sample->add_option("--out", sample_out, "output directory")->required();

  auto* search = app.add_subcommand("search", "hunt for a checker-certified counterexample");
  std::string search_target;
  int search_n = 3;
  std::uint64_t budget = 10000;
  search->add_option("--target", search_target,
                     "submodular-not-oc|oc-not-submodular|submodular-rationalizable-not-pi|src-no-lad-link")
      ->required();
  search->add_option("--n", search_n, "universe size")->required();
  search->add_option("--budget", budget, "maximum draws");

  auto* verify = app.add_subcommand("verify", "run a theorem verification harness");
  std::string verify_which;
  int verify_n = 3;
  bool exhaustive_flag = false;
  std::size_t verify_samples = 200;
  verify->add_option("--theorem", verify_which, "1|2|prop1|prop2")->required();
  verify->add_option("--n", verify_n, "universe size");
  verify->add_flag("--exhaustive", exhaustive_flag, "enumerate every rule (n <= 3)");
  auto* samples_opt = verify->add_option("--samples", verify_samples, "sampled-mode draw count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("Usage", e.what());
  }

  try {
    if (app.got_subcommand(check)) {
      if (rule_path.empty() == utility_path.empty())
        throw InputError("Usage", "pass exactly one of --rule or --utility");
      (void)witness_flag;  // witnesses are always included on violation
      return run_check(g, rule_path, utility_path, property, definitional_lad, allow_large);
    }
    if (app.got_subcommand(induce)) return run_induce(g, induce_utility, induce_out);
    if (app.got_subcommand(represent))
      return run_represent(g, represent_rule, represent_out, epsilon_text, force, dump_internals);
    if (app.got_subcommand(trace)) return run_trace(g, trace_rule, trace_set);
    if (app.got_subcommand(enumerate)) return run_enumerate(g, enum_n, enum_filter, enum_out);
    if (app.got_subcommand(sample))
      return run_sample(g, sample_family, sample_n, sample_count, sample_out);
    if (app.got_subcommand(search)) return run_search(g, search_target, search_n, budget);
    if (app.got_subcommand(verify))
      return run_verify(g, verify_which, verify_n, exhaustive_flag, samples_opt->count() > 0,
                        verify_samples);
    return emit_error("Usage", "no subcommand given");
  } catch (const InputError& e) {
    return emit_error(e.code(), e.what());
  } catch (const std::logic_error& e) {
    ordered_json doc;
    doc["error"] = "InternalCheckFailed";
    doc["detail"] = e.what();
    std::cout << doc.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    return emit_error("Error", e.what());
  }
}
