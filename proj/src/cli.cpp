#include "agree/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "agree/classifier.hpp"
#include "agree/error.hpp"
#include "agree/io.hpp"
#include "agree/laws.hpp"
#include "agree/rewrite.hpp"

namespace agree::cli {

namespace {

using json = io::json;

struct Options {
  std::string rule;
  std::string graph;
  std::string typegraph;
  std::string match;
  std::size_t match_index = 0;
  std::string out;
  std::string trace;
  std::string dot;
  std::string l;
  std::string m;
  bool verify = false;
  std::optional<std::size_t> bound;
  std::optional<std::string> law;
  std::uint64_t seed = 0;
  std::string category = "gr";
  std::size_t instances = 0;
  bool json_output = false;
  bool inject_nonlocal = false;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

// A standalone morphism whose source is the given object, up to equality.
Morphism reanchor(const Morphism& f, const ObjectRef& source, const char* what) {
  if (!same_object(f.source_ref(), source)) {
    throw UsageError(std::string(what) + ": source does not equal the expected object");
  }
  return Morphism(source, f.target_ref(), f.node_map(), f.edge_map());
}

int cmd_matches(const Options& o, std::ostream& out, std::ostream& err) {
  io::RuleDoc doc = io::parse_rule(io::read_file(o.rule));
  ObjectRef g = io::parse_graph(io::read_file(o.graph), doc.inst, "");
  json list = json::array();
  for (const auto& m : enumerate_matches(doc.rule.L(), g, doc.inst)) {
    list.push_back(io::to_json(m));
  }
  out << io::dump(list);
  if (list.empty()) {
    err << "no match of L in G\n";
    return kNoMatch;
  }
  return kOk;
}

int cmd_apply(const Options& o, std::ostream& out, std::ostream& err) {
  io::RuleDoc doc = io::parse_rule(io::read_file(o.rule));
  ObjectRef g = io::parse_graph(io::read_file(o.graph), doc.inst, "");
  std::optional<Morphism> m;
  if (!o.match.empty()) {
    m = io::parse_morphism(io::read_file(o.match), doc.rule.L(), g, doc.inst, "");
    if (!in_mono_class(*m, doc.inst)) {
      err << "error: the given match is not a mono in M\n";
      return kInputError;
    }
  } else {
    auto matches = enumerate_matches(doc.rule.L(), g, doc.inst);
    if (o.match_index >= matches.size()) {
      err << "no match with index " << o.match_index << " (found " << matches.size()
          << ")\n";
      return kNoMatch;
    }
    m = matches[o.match_index];
  }
  RewriteTrace trace = apply_rule(doc.rule, *m, doc.inst);
  emit(out, o.out, io::dump(io::to_json(*trace.H(), doc.inst)));
  if (!o.trace.empty()) emit(out, o.trace, io::dump(io::to_json(trace, doc.inst)));
  if (!o.dot.empty()) emit(out, o.dot, io::export_dot(trace));
  return kOk;
}

int cmd_classifier(const Options& o, std::ostream& out) {
  json doc = io::read_file(o.graph);
  std::optional<Graph> tg;
  if (!o.typegraph.empty()) tg = io::parse_plain_graph(io::read_file(o.typegraph), "");
  CategoryInstance inst = io::instance_for(doc, tg);
  ClassifiedObject t = t_object(io::parse_graph(doc, inst, ""), inst);
  json result = {{"category", inst.name()},
                 {"T", io::to_json(*t.total, inst)},
                 {"eta", io::to_json(t.unit)},
                 {"star_nodes", t.star_nodes},
                 {"star_edges", t.star_edges}};
  emit(out, o.out, io::dump(result));
  if (!o.dot.empty()) {
    emit(out, o.dot, io::export_dot(*t.total, io::DotStyle{t.star_nodes, t.star_edges}));
  }
  return kOk;
}

int cmd_fpbc(const Options& o, std::ostream& out, std::ostream& err) {
  io::StandaloneMorphism l = io::parse_standalone_morphism(io::read_file(o.l));
  io::StandaloneMorphism m = io::parse_standalone_morphism(io::read_file(o.m));
  if (!(l.inst == m.inst)) {
    throw UsageError("l and m live in different categories ('" + l.inst.name() + "' and '" +
                     m.inst.name() + "')");
  }
  Morphism match = reanchor(m.arrow, l.arrow.target_ref(), "m");
  Fpbc f = fpbc(l.arrow, match, l.inst);
  json result = {{"category", l.inst.name()},
                 {"D", io::to_json(f.n.target(), l.inst)},
                 {"n", io::to_json(f.n)},
                 {"a", io::to_json(f.a)}};
  int code = kOk;
  if (o.verify) {
    FpbcVerdict v = fpbc_verify(l.arrow, match, f.n, f.a, l.inst, o.bound);
    result["verify"] = {{"ok", v.ok},
                        {"bound", v.bound},
                        {"squares_checked", v.squares_checked},
                        {"counterexample", v.counterexample}};
    if (!v.ok) {
      err << "fpbc verification failed: " << v.counterexample << "\n";
      code = kCheckFailed;
    }
  }
  emit(out, o.out, io::dump(result));
  return code;
}

int cmd_check_rule(const Options& o, std::ostream& out, std::ostream& err) {
  io::RuleDoc doc = io::parse_rule(io::read_file(o.rule), false);
  json report = {{"mode", to_string(doc.rule.mode)},
                 {"category", doc.inst.name()},
                 {"t_in_M", doc.t_in_M}};
  if (!doc.t_in_M) {
    report["local"] = nullptr;
    out << io::dump(report);
    err << "rule embedding t is not a mono in M\n";
    return kCheckFailed;
  }
  report["local"] = is_local_rule(doc.rule, doc.inst);
  out << io::dump(report);
  return kOk;
}

int cmd_complement(const Options& o, std::ostream& out) {
  io::StandaloneMorphism m = io::parse_standalone_morphism(io::read_file(o.m));
  Complement c = strict_complement(m.arrow, m.inst);
  json result = {{"category", m.inst.name()},
                 {"complement", io::to_json(*c.object, m.inst)},
                 {"inclusion", io::to_json(c.inclusion)}};
  emit(out, o.out, io::dump(result));
  return kOk;
}

int cmd_laws(const Options& o, std::ostream& out, std::ostream& err) {
  CategoryInstance inst = laws::instance_named(o.category);
  std::vector<laws::LawId> selected;
  if (o.law) {
    selected.push_back(laws::parse_law(*o.law));
  } else {
    for (laws::LawId law : laws::all_laws()) {
      if (laws::applicable(law, inst)) selected.push_back(law);
    }
  }
  laws::LawConfig config;
  config.seed = o.seed;
  if (o.bound) config.bounds = laws::Bounds{*o.bound, *o.bound + 1};
  config.instances = o.instances;
  config.inject_nonlocal = o.inject_nonlocal;

  json reports = json::array();
  bool all_pass = true;
  for (laws::LawId law : selected) {
    laws::LawReport report = laws::run_law(law, config, inst);
    all_pass = all_pass && report.pass;
    if (o.json_output) {
      reports.push_back(laws::to_json(report));
    } else {
      out << laws::summary_line(report) << "\n";
    }
    if (!report.pass && report.counterexample) {
      err << to_string(law) << " counterexample:\n" << io::dump(*report.counterexample);
    }
  }
  if (o.json_output) out << io::dump(reports);
  return all_pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AGREE graph rewriting engine", "agree"};
  app.require_subcommand(1);
  Options o;

  auto* matches = app.add_subcommand("matches", "List the matches of a rule in a graph");
  matches->add_option("--rule", o.rule, "RuleDoc file")->required();
  matches->add_option("--graph", o.graph, "GraphDoc file")->required();

  auto* apply = app.add_subcommand("apply", "Apply a rule at one match");
  apply->add_option("--rule", o.rule, "RuleDoc file")->required();
  apply->add_option("--graph", o.graph, "GraphDoc file")->required();
  auto* match_file = apply->add_option("--match", o.match, "MorphismDoc file L -> G");
  apply->add_option("--match-index", o.match_index, "Index into the list of matches")
      ->excludes(match_file);
  apply->add_option("--out", o.out, "Write H here instead of standard output");
  apply->add_option("--trace", o.trace, "Write the full trace as JSON");
  apply->add_option("--dot", o.dot, "Write the trace as DOT");

  auto* classifier = app.add_subcommand("classifier", "Emit T(G) and its unit");
  classifier->add_option("--graph", o.graph, "GraphDoc file")->required();
  classifier->add_option("--typegraph", o.typegraph, "Type graph (GraphDoc file)");
  classifier->add_option("--out", o.out, "Write the result here");
  classifier->add_option("--dot", o.dot, "Write T(G) as DOT with dashed star items");

  auto* fpbc_cmd = app.add_subcommand("fpbc", "Final pullback complement of (l, m)");
  fpbc_cmd->add_option("--l", o.l, "Standalone MorphismDoc K -> L")->required();
  fpbc_cmd->add_option("--m", o.m, "Standalone MorphismDoc L -> G")->required();
  fpbc_cmd->add_flag("--verify", o.verify, "Check finality by enumeration");
  fpbc_cmd->add_option("--bound", o.bound, "Item bound for the check (default |D|+1)");
  fpbc_cmd->add_option("--out", o.out, "Write the result here");

  auto* check = app.add_subcommand("check-rule", "Report mode, t in M and locality");
  check->add_option("--rule", o.rule, "RuleDoc file")->required();

  auto* complement = app.add_subcommand("complement", "Strict complement G∖L of m");
  complement->add_option("--m", o.m, "Standalone MorphismDoc L -> G")->required();
  complement->add_option("--out", o.out, "Write the result here");

  auto* laws_cmd = app.add_subcommand("laws", "Run the law suite");
  laws_cmd->add_option("--law", o.law, "Law id (default: all applicable laws)");
  laws_cmd->add_option("--seed", o.seed, "Generator seed");
  laws_cmd->add_option("--bound", o.bound, "Node bound; the edge bound is one more");
  laws_cmd->add_option("--category", o.category, "gr, typed or pol");
  laws_cmd->add_option("--instances", o.instances, "Instances per law (default per law)");
  laws_cmd->add_flag("--json", o.json_output, "Print reports as JSON");
  laws_cmd->add_flag("--inject-nonlocal", o.inject_nonlocal,
                     "Negative control: first LOCALITY instance uses t = id");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*matches) return cmd_matches(o, out, err);
    if (*apply) return cmd_apply(o, out, err);
    if (*classifier) return cmd_classifier(o, out);
    if (*fpbc_cmd) return cmd_fpbc(o, out, err);
    if (*check) return cmd_check_rule(o, out, err);
    if (*complement) return cmd_complement(o, out);
    if (*laws_cmd) return cmd_laws(o, out, err);
  } catch (const ParseError& e) {
    for (const auto& issue : e.issues()) err << "error: " << issue << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace agree::cli
