#include "ibu/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ibu/conditions.hpp"
#include "ibu/replays.hpp"
#include "ibu/scenario_text.hpp"
#include "ibu/search.hpp"

namespace ibu {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "ibu-report/1";

Json world_list(const WorldSet& ws, const Universe& u) {
  Json arr = Json::array();
  ws.for_each([&](World w) { arr.push_back(u.world_label(w)); });
  return arr;
}

Json violation_json(const Violation& v, const Universe& u) {
  Json j;
  j["phi"] = world_list(v.phi, u);
  j["phi_text"] = v.phi_text;
  if (v.varphi) {
    j["varphi"] = world_list(*v.varphi, u);
    j["varphi_text"] = v.varphi_text;
  }
  if (!v.state_id.empty()) j["state"] = v.state_id;
  j["expected"] = world_list(v.expected, u);
  j["actual"] = world_list(v.actual, u);
  j["detail"] = v.detail;
  return j;
}

Json check_report_json(const CheckReport& r, const Universe& u) {
  Json j;
  j["postulate"] = r.postulate;
  j["state"] = r.state_id;
  j["strategy"] = r.strategy;
  j["verdict"] = r.verdict();
  j["instances_checked"] = r.instances_checked;
  j["instances_vacuous"] = r.instances_vacuous;
  j["instances_skipped"] = r.instances_skipped;
  j["violations_total"] = r.violations_total;
  Json arr = Json::array();
  for (const auto& v : r.violations) arr.push_back(violation_json(v, u));
  j["violations"] = arr;
  return j;
}

void check_report_human(const CheckReport& r, const Universe& u,
                        std::ostream& out) {
  out << r.postulate << " on state " << r.state_id << " [" << r.strategy
      << "]: " << r.verdict() << " (" << r.instances_checked << " checked, "
      << r.instances_vacuous << " vacuous, " << r.instances_skipped
      << " skipped";
  if (r.violations_total > 0) out << ", " << r.violations_total << " violations";
  out << ")\n";
  for (const auto& v : r.violations) {
    out << "  phi = " << v.phi_text;
    if (v.varphi) out << ", varphi = " << v.varphi_text;
    out << ": " << v.detail << "; expected " << u.set_label(v.expected)
        << ", actual " << u.set_label(v.actual) << "\n";
  }
  if (r.violations_total > r.violations.size())
    out << "  ... " << (r.violations_total - r.violations.size())
        << " more violations not stored\n";
}

Json cr_report_json(const CrReport& r, const Universe& u) {
  Json j;
  j["condition"] = r.condition;
  j["state"] = r.state_id;
  j["verdict"] = r.verdict();
  j["sets_total"] = r.n_total;
  j["sets_substantive"] = r.n_guarded;
  j["sets_vacuous"] = r.n_vacuous;
  j["sets_failed"] = r.n_failed;
  Json arr = Json::array();
  for (const auto& w : r.witnesses) {
    Json wj;
    wj["n"] = world_list(w.n, u);
    wj["direction"] = w.direction;
    wj["unmatched"] = u.world_label(w.unmatched);
    if (w.at_world) wj["at_world"] = u.world_label(*w.at_world);
    arr.push_back(wj);
  }
  j["witnesses"] = arr;
  return j;
}

void cr_report_human(const CrReport& r, const Universe& u, std::ostream& out) {
  out << r.condition << " on state " << r.state_id << ": " << r.verdict()
      << " (" << r.n_total << " sets, " << r.n_guarded << " substantive, "
      << r.n_vacuous << " vacuous, " << r.n_failed << " failed)\n";
  for (const auto& w : r.witnesses) out << "  " << w.describe(u) << "\n";
  if (r.n_failed > r.witnesses.size())
    out << "  ... " << (r.n_failed - r.witnesses.size())
        << " more failing sets not stored\n";
}

struct LoadedScenario {
  Scenario scenario;
  std::string path;
};

LoadedScenario load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return {parse_scenario(buf.str()), path};
}

std::string default_op(const Scenario& sc) {
  return sc.script.empty() ? "op1" : "scripted";
}

void warn_if_large(const Scenario& sc, std::ostream& err) {
  if (sc.universe.world_count() > 8)
    err << "warning: exhaustive checking over "
        << sc.universe.world_count()
        << " worlds enumerates 2^" << sc.universe.world_count()
        << " sentence classes per input slot; expect long runtimes\n";
}

// ---------------------------------------------------------------------------
// Commands

int cmd_eval(const LoadedScenario& ls, const std::string& formula, bool json,
             std::ostream& out) {
  const Sentence s = ls.scenario.parse_sentence(formula);
  const Universe& u = ls.scenario.universe;
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "eval";
    j["sentence"] = s.text();
    j["models"] = world_list(s.denotation(), u);
    j["count"] = s.denotation().count();
    out << j.dump(2) << "\n";
  } else {
    out << "[" << s.text() << "] = " << u.set_label(s.denotation()) << " ("
        << s.denotation().count() << " worlds)\n";
  }
  return 0;
}

int cmd_update(const LoadedScenario& ls, const std::string& state_id,
               const std::string& with, const std::string& op, bool json,
               std::ostream& out) {
  const Scenario& sc = ls.scenario;
  const Universe& u = sc.universe;
  const BeliefState& s = sc.state(state_id);
  const Sentence input = sc.parse_sentence(with);
  const auto strategy = make_strategy(op, sc);
  if (!strategy->defined_on(s, input.denotation()))
    throw Error("strategy '" + op + "' is undefined on state '" + state_id +
                "' with input " + input.text());
  const BeliefState next = apply_strategy(*strategy, s, input.denotation(), u);
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "update";
    j["state"] = state_id;
    j["input"] = input.text();
    j["strategy"] = strategy->name();
    j["belief"] = world_list(next.belief, u);
    Json orders = Json::object();
    for (const auto& [w, order] : next.orders)
      orders[u.world_label(w)] = order.describe(u);
    j["orders"] = orders;
    out << j.dump(2) << "\n";
  } else {
    out << "belief: " << u.set_label(next.belief) << "\n";
    for (const auto& [w, order] : next.orders)
      out << "order " << u.world_label(w) << ": " << order.describe(u)
          << "\n";
  }
  return 0;
}

int cmd_iterate(const LoadedScenario& ls, const std::string& state_id,
                const std::string& with, const std::string& then,
                const std::string& op, bool json, std::ostream& out) {
  const Scenario& sc = ls.scenario;
  const Universe& u = sc.universe;
  const BeliefState& s = sc.state(state_id);
  const Sentence first = sc.parse_sentence(with);
  const Sentence second = sc.parse_sentence(then);
  const auto strategy = make_strategy(op, sc);
  if (!strategy->defined_on(s, first.denotation()))
    throw Error("strategy '" + op + "' is undefined on state '" + state_id +
                "' with input " + first.text());
  const BeliefState s1 = apply_strategy(*strategy, s, first.denotation(), u);
  const WorldSet b2 = semantic_update_belief(s1, second.denotation());
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "iterate";
    j["state"] = state_id;
    j["inputs"] = Json::array({first.text(), second.text()});
    j["strategy"] = strategy->name();
    j["belief_after_first"] = world_list(s1.belief, u);
    j["belief_after_second"] = world_list(b2, u);
    out << j.dump(2) << "\n";
  } else {
    out << "after " << first.text() << ": " << u.set_label(s1.belief) << "\n";
    out << "after " << second.text() << ": " << u.set_label(b2) << "\n";
  }
  return 0;
}

int cmd_check(const LoadedScenario& ls, const std::string& postulate,
              bool all, const std::string& op, const std::string& only_state,
              std::uint32_t cap, bool json, std::ostream& out,
              std::ostream& err) {
  const Scenario& sc = ls.scenario;
  const Universe& u = sc.universe;
  warn_if_large(sc, err);
  const auto strategy = make_strategy(op, sc);

  std::vector<std::string> names;
  if (all) {
    for (int i = 1; i <= 8; ++i) names.push_back("u" + std::to_string(i));
    for (const char* n : {"c1", "c2", "c3", "c4", "nat", "lex", "ind"})
      names.push_back(n);
  } else if (!postulate.empty()) {
    names.push_back(postulate);
  } else {
    throw UsageError("pass --postulate <name> or --all");
  }

  std::vector<CheckReport> reports;
  for (const BeliefState& s : sc.states) {
    if (!only_state.empty() && s.id != only_state) continue;
    for (const std::string& name : names) {
      if (const auto km = parse_km_postulate(name)) {
        reports.push_back(check_km_one(*strategy, s, *km, u, cap));
      } else if (const auto iter = parse_iter_postulate(name)) {
        reports.push_back(check_iterated(*strategy, s, *iter, u, cap));
      } else {
        throw UsageError("unknown postulate '" + name + "'");
      }
    }
  }

  bool all_hold = true;
  for (const auto& r : reports) all_hold = all_hold && r.holds();

  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "check";
    j["strategy"] = strategy->name();
    j["verdict"] = all_hold ? "holds-exhaustively" : "violated";
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(check_report_json(r, u));
    j["reports"] = arr;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) check_report_human(r, u, out);
    out << (all_hold ? "all checked postulates hold\n"
                     : "violations found\n");
  }
  return all_hold ? 0 : 1;
}

int cmd_cr(const LoadedScenario& ls, const std::string& condition,
           const std::string& state_id, const std::string& with,
           const std::string& op, std::uint32_t cap, bool json,
           std::ostream& out, std::ostream& err) {
  const Scenario& sc = ls.scenario;
  const Universe& u = sc.universe;
  warn_if_large(sc, err);
  const auto which = parse_cr_condition(condition);
  if (!which) throw UsageError("unknown condition '" + condition + "'");
  const BeliefState& s = sc.state(state_id);
  const Sentence input = sc.parse_sentence(with);
  const auto strategy = make_strategy(op, sc);
  if (!strategy->defined_on(s, input.denotation()))
    throw Error("strategy '" + op + "' is undefined on state '" + state_id +
                "' with input " + input.text());
  const BeliefState s1 = apply_strategy(*strategy, s, input.denotation(), u);
  const CrReport r = check_cr(s, s1, input.denotation(), *which, u, cap);
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "cr";
    j["strategy"] = strategy->name();
    j["input"] = input.text();
    j["report"] = cr_report_json(r, u);
    out << j.dump(2) << "\n";
  } else {
    cr_report_human(r, u, out);
  }
  return r.holds() ? 0 : 1;
}

int cmd_harness(const LoadedScenario& ls, const std::string& pairs_arg,
                const std::string& op, const std::string& only_state,
                bool json, std::ostream& out, std::ostream& err) {
  const Scenario& sc = ls.scenario;
  const Universe& u = sc.universe;
  warn_if_large(sc, err);
  const auto strategy = make_strategy(op, sc);

  std::vector<HarnessPair> pairs;
  if (pairs_arg.empty()) {
    auto all = all_harness_pairs();
    pairs.assign(all.begin(), all.end());
  } else {
    std::istringstream in(pairs_arg);
    std::string name;
    while (std::getline(in, name, ',')) {
      const auto p = parse_iter_postulate(name);
      if (!p) throw UsageError("unknown postulate '" + name + "'");
      for (const auto& hp : all_harness_pairs())
        if (hp.postulate == *p) pairs.push_back(hp);
    }
  }

  std::vector<BeliefState> states;
  for (const BeliefState& s : sc.states)
    if (only_state.empty() || s.id == only_state) states.push_back(s);

  const HarnessReport r = equivalence_harness(*strategy, states, pairs, u);
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "harness";
    j["strategy"] = r.strategy;
    j["instances"] = r.instances;
    j["skipped"] = r.skipped;
    j["agreements"] = r.agreements;
    j["postulate_instances"] = r.postulate_instances;
    j["condition_sets"] = r.condition_sets;
    Json arr = Json::array();
    for (const auto& d : r.disagreements) {
      Json dj;
      dj["state"] = d.state_id;
      dj["phi"] = world_list(d.phi, u);
      dj["pair"] = d.pair;
      dj["postulate_holds"] = d.postulate_holds;
      dj["condition_holds"] = d.condition_holds;
      if (d.postulate_witness)
        dj["postulate_witness"] = violation_json(*d.postulate_witness, u);
      if (d.condition_witness) {
        Json wj;
        wj["n"] = world_list(d.condition_witness->n, u);
        wj["direction"] = d.condition_witness->direction;
        wj["unmatched"] = u.world_label(d.condition_witness->unmatched);
        dj["condition_witness"] = wj;
      }
      arr.push_back(dj);
    }
    j["disagreements"] = arr;
    out << j.dump(2) << "\n";
  } else {
    out << "harness [" << r.strategy << "]: " << r.instances
        << " (state, input, pair) instances, " << r.agreements
        << " agreements, " << r.skipped << " skipped, "
        << r.disagreements.size() << " disagreements\n";
    for (const auto& d : r.disagreements) {
      out << "  " << d.pair << " at state " << d.state_id << ", phi = "
          << u.set_label(d.phi) << ": postulate "
          << (d.postulate_holds ? "holds" : "violated") << " but condition "
          << (d.condition_holds ? "holds" : "violated") << "\n";
      if (d.postulate_witness)
        out << "    postulate witness: varphi = "
            << d.postulate_witness->varphi_text << "\n";
      if (d.condition_witness)
        out << "    condition witness: " << d.condition_witness->describe(u)
            << "\n";
    }
  }
  return r.ok() ? 0 : 1;
}

int render_replay(const ReplayResult& r, bool json, std::ostream& out) {
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "replay";
    j["id"] = r.id;
    j["title"] = r.title;
    j["notes"] = r.notes;
    Json arr = Json::array();
    for (const auto& c : r.checks) {
      Json cj;
      cj["description"] = c.description;
      cj["pass"] = c.pass;
      cj["observed"] = c.observed;
      arr.push_back(cj);
    }
    j["checks"] = arr;
    j["demonstrates_violation"] = r.demonstrates_violation;
    j["confirmed"] = r.confirmed();
    out << j.dump(2) << "\n";
  } else {
    out << r.id << ": " << r.title << "\n";
    for (const auto& c : r.checks)
      out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.description
          << " (observed: " << c.observed << ")\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    if (r.demonstrates_violation && r.confirmed())
      out << "  => the demonstrated postulate violation is real\n";
  }
  return r.exit_code();
}

int render_theorem6(const SearchOutcome& o, bool json, std::ostream& out) {
  const Universe& u = o.scenario.universe;
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "replay";
    j["id"] = "impossibility-" + o.variant;
    if (o.ablated) j["ablated"] = *o.ablated;
    j["trace"] = o.constraint_trace;
    j["candidates"] = o.candidates_examined;
    j["forth_survivors"] = o.forth_survivors;
    j["survivors"] = o.survivors.size();
    Json arr = Json::array();
    for (const auto& p : o.survivors) arr.push_back(p.describe(u));
    j["survivor_relations"] = arr;
    out << j.dump(2) << "\n";
  } else {
    out << "impossibility replay, variant " << o.variant;
    if (o.ablated) out << " (forth family " << *o.ablated << " dropped)";
    out << "\n";
    for (const auto& line : o.constraint_trace) out << "  " << line << "\n";
    out << "  " << o.survivors.size() << " survivors / "
        << o.candidates_examined << " candidates (" << o.forth_survivors
        << " passed the forth filter)\n";
    for (const auto& p : o.survivors)
      out << "  survivor: " << p.describe(u) << "\n";
    if (!o.ablated)
      out << (o.survivors.empty()
                  ? "  => no successor order collection exists\n"
                  : "  => UNEXPECTED survivors; the enumeration found a "
                    "successor order\n");
  }
  if (o.ablated) return 0;  // the ablation run is a sanity probe
  return o.survivors.empty() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"iterated belief update workbench"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the machine-readable twin report");

  std::string file, formula, state_id, with, then, op, postulate, condition;
  std::string pairs_arg, order_style = "total", out_path, theorem6, ablate;
  bool all = false;
  int example = 0;
  std::uint32_t cap = 25;
  std::uint64_t seed = 0;
  std::uint32_t atoms = 3, belief_size = 2, script_entries = 0;

  auto* eval = app.add_subcommand("eval", "evaluate a sentence's models");
  eval->add_option("file", file)->required();
  eval->add_option("--formula", formula)->required();

  auto* update = app.add_subcommand("update", "one update step");
  update->add_option("file", file)->required();
  update->add_option("--state", state_id)->required();
  update->add_option("--with", with)->required();
  update->add_option("--op", op);

  auto* iterate = app.add_subcommand("iterate", "two update steps");
  iterate->add_option("file", file)->required();
  iterate->add_option("--state", state_id)->required();
  iterate->add_option("--with", with)->required();
  iterate->add_option("--then", then)->required();
  iterate->add_option("--op", op);

  auto* check = app.add_subcommand("check", "exhaustive postulate check");
  check->add_option("file", file)->required();
  check->add_option("--postulate", postulate);
  check->add_flag("--all", all);
  check->add_option("--op", op);
  check->add_option("--state", state_id);
  check->add_option("--max-violations", cap);

  auto* cr = app.add_subcommand("cr", "exhaustive semantic-condition check");
  cr->add_option("file", file)->required();
  cr->add_option("--condition", condition)->required();
  cr->add_option("--state", state_id)->required();
  cr->add_option("--with", with)->required();
  cr->add_option("--op", op);
  cr->add_option("--max-violations", cap);

  auto* harness = app.add_subcommand(
      "harness", "postulate vs semantic-condition agreement");
  harness->add_option("file", file)->required();
  harness->add_option("--pairs", pairs_arg);
  harness->add_option("--op", op);
  harness->add_option("--state", state_id);

  auto* replay = app.add_subcommand("replay", "run a bundled scenario");
  replay->add_option("--example", example)->check(CLI::Range(1, 9));
  replay->add_option("--theorem6", theorem6)
      ->check(CLI::IsMember({"c1", "c2"}));
  replay->add_option("--ablate", ablate)
      ->check(CLI::IsMember({"n0", "n1", "n2"}));
  replay->add_option("--file", file);

  auto* random = app.add_subcommand("random", "emit a generated scenario");
  random->add_option("--seed", seed)->required();
  random->add_option("--atoms", atoms)->check(CLI::Range(2, 3));
  random->add_option("--belief-size", belief_size)->check(CLI::Range(1, 3));
  random->add_option("--order-style", order_style)
      ->check(CLI::IsMember({"total", "partial"}));
  random->add_option("--script-entries", script_entries);
  random->add_option("--out", out_path);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(load_file(file), formula, json, out);
    if (update->parsed()) {
      const LoadedScenario ls = load_file(file);
      return cmd_update(ls, state_id, with,
                        op.empty() ? default_op(ls.scenario) : op, json, out);
    }
    if (iterate->parsed()) {
      const LoadedScenario ls = load_file(file);
      return cmd_iterate(ls, state_id, with, then,
                         op.empty() ? default_op(ls.scenario) : op, json,
                         out);
    }
    if (check->parsed()) {
      const LoadedScenario ls = load_file(file);
      return cmd_check(ls, postulate, all,
                       op.empty() ? default_op(ls.scenario) : op, state_id,
                       cap, json, out, err);
    }
    if (cr->parsed()) {
      const LoadedScenario ls = load_file(file);
      return cmd_cr(ls, condition, state_id, with,
                    op.empty() ? default_op(ls.scenario) : op, cap, json, out,
                    err);
    }
    if (harness->parsed()) {
      const LoadedScenario ls = load_file(file);
      return cmd_harness(ls, pairs_arg,
                         op.empty() ? default_op(ls.scenario) : op, state_id,
                         json, out, err);
    }
    if (replay->parsed()) {
      if (example > 0) return render_replay(replay_example(example), json, out);
      if (!theorem6.empty()) {
        const Theorem6Variant variant = theorem6 == "c1" ? Theorem6Variant::C1
                                                         : Theorem6Variant::C2;
        std::optional<ConstraintFamily> drop;
        if (!ablate.empty()) drop = parse_constraint_family(ablate);
        return render_theorem6(replay_theorem6(variant, drop), json, out);
      }
      if (!file.empty()) {
        const LoadedScenario ls = load_file(file);
        ReplayResult r;
        r.id = ls.path;
        r.title = "scenario self-checks";
        r.checks = run_expectations(ls.scenario);
        const int code = render_replay(r, json, out);
        return code == 2 ? 1 : code;  // a failed user expectation is a mismatch
      }
      throw UsageError("pass --example, --theorem6 or --file");
    }
    if (random->parsed()) {
      RandomScenarioParams p;
      p.atoms = atoms;
      p.belief_size = belief_size;
      p.style = order_style == "partial"
                    ? RandomScenarioParams::OrderStyle::Partial
                    : RandomScenarioParams::OrderStyle::TotalLayered;
      p.script_entries = script_entries;
      const std::string text = print_scenario(random_scenario(seed, p));
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path);
        if (!f) throw UsageError("cannot write '" + out_path + "'");
        f << text;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace ibu
