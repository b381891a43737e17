#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccs/congruence.hpp"
#include "ccs/context.hpp"
#include "ccs/defs.hpp"
#include "ccs/equiv.hpp"
#include "ccs/lts.hpp"
#include "ccs/solutions.hpp"
#include "ccs/suites.hpp"

using nlohmann::json;

namespace {

struct Options {
  std::size_t max_states = 10000;
  std::uint64_t seed = 42;
  std::size_t cases = 200;
  bool as_json = false;
  bool full_witness = false;

  ccs::Budget budget() const { return ccs::Budget{max_states, {}}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ccs::Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// An argument names a defined agent (when a definition file is loaded) or
// is process text.
ccs::Process resolve(const std::string& text, const std::optional<ccs::Definitions>& defs) {
  if (defs && ccs::is_valid_name(text) && defs->defined(text)) return defs->agents.at(text);
  return ccs::parse(text);
}

std::optional<ccs::Definitions> load_defs(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return ccs::load_definitions(read_file(path));
}

json verdict_json(const ccs::Verdict& v, bool full_witness) {
  json out;
  out["holds"] = v.holds;
  if (v.holds) {
    out["witness_size"] = v.witness.size();
    if (full_witness) {
      json pairs = json::array();
      for (const auto& [s, t] : v.witness.pairs) pairs.push_back({s, t});
      out["witness"] = std::move(pairs);
    }
  } else if (v.reason) {
    out["distinguisher"] = {{"left", v.reason->left},
                            {"right", v.reason->right},
                            {"clause", v.reason->clause},
                            {"action", ccs::to_string(v.reason->action)}};
  }
  return out;
}

int report_verdict(const ccs::Verdict& v, const Options& opts, const std::string& relation) {
  if (opts.as_json) {
    json out = verdict_json(v, opts.full_witness);
    out["relation"] = relation;
    std::cout << out.dump() << "\n";
  } else if (v.holds) {
    std::cout << relation << " holds (witness: " << v.witness.size() << " pairs)\n";
  } else {
    std::cout << relation << " does not hold";
    if (v.reason)
      std::cout << " (" << v.reason->clause << " on action " << ccs::to_string(v.reason->action)
                << ")";
    std::cout << "\n";
  }
  return v.holds ? 0 : 1;
}

int cmd_parse(const Options& opts, const std::string& text) {
  ccs::Process p = ccs::parse(text);
  if (opts.as_json)
    std::cout << json{{"pretty", ccs::pretty(p)}, {"closed", ccs::is_closed(p)}}.dump() << "\n";
  else
    std::cout << ccs::pretty(p) << "\n";
  return 0;
}

int cmd_trans(const Options& opts, const std::string& file_or_text, const std::string& name) {
  ccs::Process p = name.empty() ? ccs::parse(file_or_text)
                                : resolve(name, load_defs(file_or_text));
  auto transitions = ccs::step(p);
  if (opts.as_json) {
    json out = json::array();
    for (const auto& [u, target] : transitions)
      out.push_back({{"action", ccs::to_string(u)}, {"target", ccs::pretty(target)}});
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& [u, target] : transitions)
      std::cout << ccs::to_string(u) << "\t" << ccs::pretty(target) << "\n";
  }
  return 0;
}

int cmd_lts(const Options& opts, const std::string& file_or_text, const std::string& name,
            bool dot) {
  ccs::Process p = name.empty() ? ccs::parse(file_or_text)
                                : resolve(name, load_defs(file_or_text));
  ccs::Lts l = ccs::explore(p, opts.max_states);
  if (dot) {
    std::cout << ccs::to_dot(l);
    return 0;
  }
  std::size_t edges = 0;
  for (std::size_t s = 0; s < l.size(); ++s) edges += l.edges(static_cast<int>(s)).size();
  if (opts.as_json) {
    std::cout << json{{"states", l.size()},
                      {"edges", edges},
                      {"root", ccs::pretty(l.process(l.root()))},
                      {"stable_root", ccs::is_stable(l, l.root())}}
                     .dump()
              << "\n";
  } else {
    std::cout << "states: " << l.size() << "\nedges: " << edges << "\n";
  }
  return 0;
}

int cmd_eq(const Options& opts, const std::string& rel, const std::string& left,
           const std::string& right, const std::string& file) {
  auto defs = load_defs(file);
  ccs::Process p = resolve(left, defs), q = resolve(right, defs);
  if (rel == "strong") return report_verdict(ccs::strong_bisim(p, q, opts.budget()), opts, rel);
  if (rel == "weak") return report_verdict(ccs::weak_bisim(p, q, opts.budget()), opts, rel);
  if (rel == "rooted") return report_verdict(ccs::rooted_bisim(p, q, opts.budget()), opts, rel);
  throw ccs::Error("unknown equivalence: " + rel);
}

int cmd_pre(const Options& opts, const std::string& rel, const std::string& left,
            const std::string& right, const std::string& file) {
  auto defs = load_defs(file);
  ccs::Process p = resolve(left, defs), q = resolve(right, defs);
  if (rel == "expansion") return report_verdict(ccs::expansion(p, q, opts.budget()), opts, rel);
  if (rel == "contraction") return report_verdict(ccs::contraction(p, q, opts.budget()), opts, rel);
  if (rel == "rooted-contraction")
    return report_verdict(ccs::rooted_contraction(p, q, opts.budget()), opts, rel);
  throw ccs::Error("unknown preorder: " + rel);
}

int cmd_classify(const Options& opts, const std::string& text, bool as_expression) {
  if (as_expression) {
    ccs::Process e = ccs::parse(text);
    bool wg = ccs::weakly_guarded_expr(e);
    bool under_rec = ccs::has_free_var_under_rec(e);
    if (opts.as_json) {
      std::cout << json{{"weakly_guarded", wg}, {"free_variable_under_rec", under_rec}}.dump()
                << "\n";
    } else {
      std::cout << "weakly guarded: " << (wg ? "yes" : "no") << "\n";
      if (under_rec)
        std::cout << "note: a free variable occurs under a rec binder; such occurrences are"
                     " invisible to context-based guardedness\n";
    }
    return 0;
  }
  ccs::Context c = ccs::parse_context(text);
  ccs::Classification k = ccs::classify(c);
  if (opts.as_json) {
    std::cout << json{{"context", k.context}, {"gcontext", k.gcontext}, {"wg", k.wg},
                      {"wgs", k.wgs},         {"sg", k.sg},             {"seq", k.seq}}
                     .dump()
              << "\n";
  } else {
    auto mark = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "context:  " << mark(k.context) << "\n"
              << "gcontext: " << mark(k.gcontext) << "\n"
              << "wg:       " << mark(k.wg) << "\n"
              << "wgs:      " << mark(k.wgs) << "\n"
              << "sg:       " << mark(k.sg) << "\n"
              << "seq:      " << mark(k.seq) << "\n";
  }
  return 0;
}

int cmd_solution(const Options& opts, const std::string& body_text, const std::string& variant,
                 const std::string& left, const std::string& right, const std::string& file) {
  auto rel = ccs::solve_relation_from(variant);
  if (!rel) throw ccs::Error("unknown variant: " + variant);
  auto defs = load_defs(file);
  ccs::SystemSpec spec{ccs::parse_context(body_text), *rel};
  ccs::Process p = resolve(left, defs), q = resolve(right, defs);
  ccs::SolutionReport report = ccs::unique_solution(spec, p, q, opts.budget());

  if (opts.as_json) {
    json checks = json::object();
    for (const auto& [name, pass] : report.hypothesis_checks) checks[name] = pass;
    json out{{"theorem", report.theorem}, {"hypotheses", checks}};
    if (report.conclusion) out["conclusion"] = verdict_json(*report.conclusion, opts.full_witness);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "theorem: " << report.theorem << "\n";
    for (const auto& [name, pass] : report.hypothesis_checks)
      std::cout << "  " << name << ": " << (pass ? "pass" : "FAIL") << "\n";
    if (report.conclusion)
      std::cout << "conclusion: " << (report.conclusion->holds ? "holds" : "does not hold") << "\n";
    else
      std::cout << "conclusion: not evaluated (hypotheses failed)\n";
  }
  return report.ok() ? 0 : 1;
}

int cmd_suite(const Options& opts) {
  ccs::suites::SuiteConfig cfg;
  cfg.seed = opts.seed;
  cfg.cases = opts.cases;
  cfg.max_states = opts.max_states == 10000 ? 2000 : opts.max_states;
  std::vector<ccs::suites::SuiteResult> results = ccs::suites::run_all_suites(cfg);

  bool all_ok = true;
  if (opts.as_json) {
    json out = json::array();
    for (const auto& r : results) {
      all_ok = all_ok && r.ok();
      out.push_back({{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}});
    }
    std::cout << json{{"suites", out}, {"ok", all_ok}}.dump() << "\n";
  } else {
    for (const auto& r : results) {
      all_ok = all_ok && r.ok();
      std::cout << (r.ok() ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.cases << " cases, "
                << r.failures << " failures)\n";
      for (const std::string& note : r.notes) std::cout << "      " << note << "\n";
    }
    std::cout << (all_ok ? "all suites passed" : "some suites FAILED") << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{"CCS toolkit: transitions, LTS exploration, behavioural relations, context"
               " classification, unique-solution checking"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--max-states", opts.max_states, "state budget for exploration");
  app.add_option("--seed", opts.seed, "random seed for the property suites");
  app.add_flag("--json", opts.as_json, "emit JSON");
  app.add_flag("--full-witness", opts.full_witness, "dump full witness relations in JSON");

  std::string text, name, left, right, rel, file, body, variant;
  bool dot = false, as_expression = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a process and print its normal form");
  parse_cmd->add_option("text", text)->required();

  CLI::App* trans_cmd = app.add_subcommand("trans", "list the one-step transitions");
  trans_cmd->add_option("file", text)->required();
  trans_cmd->add_option("name", name);

  CLI::App* lts_cmd = app.add_subcommand("lts", "explore the reachable state space");
  lts_cmd->add_option("file", text)->required();
  lts_cmd->add_option("name", name);
  lts_cmd->add_flag("--dot", dot, "emit Graphviz DOT");

  CLI::App* eq_cmd = app.add_subcommand("eq", "decide strong/weak/rooted bisimilarity");
  eq_cmd->add_option("relation", rel)->required()->check(CLI::IsMember({"strong", "weak", "rooted"}));
  eq_cmd->add_option("left", left)->required();
  eq_cmd->add_option("right", right)->required();
  eq_cmd->add_option("--file", file, "definition file for agent names");

  CLI::App* pre_cmd = app.add_subcommand("pre", "decide expansion/contraction preorders");
  pre_cmd->add_option("relation", rel)
      ->required()
      ->check(CLI::IsMember({"expansion", "contraction", "rooted-contraction"}));
  pre_cmd->add_option("left", left)->required();
  pre_cmd->add_option("right", right)->required();
  pre_cmd->add_option("--file", file, "definition file for agent names");

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a context (use _ for the hole)");
  classify_cmd->add_option("context", text)->required();
  classify_cmd->add_flag("--expr", as_expression,
                         "treat the input as an open expression and check weak guardedness");

  CLI::App* solution_cmd =
      app.add_subcommand("solution", "check a unique-solution theorem instance");
  solution_cmd->add_option("--body", body, "context body (use _ for the hole)")->required();
  solution_cmd->add_option("--variant", variant,
                           "strong | weak | rooted | contraction | rooted-contraction")
      ->required();
  solution_cmd->add_option("left", left)->required();
  solution_cmd->add_option("right", right)->required();
  solution_cmd->add_option("--file", file, "definition file for agent names");

  CLI::App* suite_cmd = app.add_subcommand("suite", "run the randomized property suites");
  suite_cmd->add_option("--cases", opts.cases, "cases per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(opts, text);
    if (trans_cmd->parsed()) return cmd_trans(opts, text, name);
    if (lts_cmd->parsed()) return cmd_lts(opts, text, name, dot);
    if (eq_cmd->parsed()) return cmd_eq(opts, rel, left, right, file);
    if (pre_cmd->parsed()) return cmd_pre(opts, rel, left, right, file);
    if (classify_cmd->parsed()) return cmd_classify(opts, text, as_expression);
    if (solution_cmd->parsed()) return cmd_solution(opts, body, variant, left, right, file);
    if (suite_cmd->parsed()) return cmd_suite(opts);
  } catch (const ccs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
