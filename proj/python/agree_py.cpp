#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agree/classifier.hpp"
#include "agree/error.hpp"
#include "agree/io.hpp"
#include "agree/laws.hpp"
#include "agree/rewrite.hpp"

namespace py = pybind11;
using namespace agree;
using json = io::json;

// Every entry point takes and returns JSON text; the Python package
// converts to and from dicts.

namespace {

json parse(const std::string& text, const char* what) { return io::parse_text(text, what); }

ObjectRef host_for(const io::RuleDoc& rd, const std::string& graph) {
  return io::parse_graph(parse(graph, "graph"), rd.inst, "");
}

std::string matches(const std::string& rule, const std::string& graph) {
  io::RuleDoc rd = io::parse_rule(parse(rule, "rule"));
  json list = json::array();
  for (const auto& m : enumerate_matches(rd.rule.L(), host_for(rd, graph), rd.inst)) {
    list.push_back(io::to_json(m));
  }
  return list.dump();
}

std::string apply(const std::string& rule, const std::string& graph,
                  const std::optional<std::string>& match, std::size_t match_index) {
  io::RuleDoc rd = io::parse_rule(parse(rule, "rule"));
  ObjectRef g = host_for(rd, graph);
  std::optional<Morphism> m;
  if (match) {
    m = io::parse_morphism(parse(*match, "match"), rd.rule.L(), g, rd.inst, "");
    if (!in_mono_class(*m, rd.inst)) throw PreconditionError("the match is not a mono in M");
  } else {
    auto all = enumerate_matches(rd.rule.L(), g, rd.inst);
    if (match_index >= all.size()) {
      throw PreconditionError("no match with index " + std::to_string(match_index) +
                              " (found " + std::to_string(all.size()) + ")");
    }
    m = all[match_index];
  }
  RewriteTrace trace = apply_rule(rd.rule, *m, rd.inst);
  json out = {{"H", io::to_json(*trace.H(), rd.inst)}, {"trace", io::to_json(trace, rd.inst)}};
  return out.dump();
}

std::string classifier(const std::string& graph, const std::optional<std::string>& typegraph) {
  json doc = parse(graph, "graph");
  std::optional<Graph> tg;
  if (typegraph) tg = io::parse_plain_graph(parse(*typegraph, "typegraph"), "");
  CategoryInstance inst = io::instance_for(doc, tg);
  ClassifiedObject t = t_object(io::parse_graph(doc, inst, ""), inst);
  json out = {{"category", inst.name()},
              {"T", io::to_json(*t.total, inst)},
              {"eta", io::to_json(t.unit)},
              {"star_nodes", t.star_nodes},
              {"star_edges", t.star_edges},
              {"dot", io::export_dot(*t.total, io::DotStyle{t.star_nodes, t.star_edges})}};
  return out.dump();
}

std::string run_fpbc(const std::string& l_doc, const std::string& m_doc, bool verify,
                     std::optional<std::size_t> bound) {
  auto l = io::parse_standalone_morphism(parse(l_doc, "l"));
  auto m = io::parse_standalone_morphism(parse(m_doc, "m"));
  if (!(l.inst == m.inst)) throw UsageError("l and m live in different categories");
  if (!same_object(m.arrow.source_ref(), l.arrow.target_ref())) {
    throw UsageError("m: source does not equal the target of l");
  }
  Morphism match(l.arrow.target_ref(), m.arrow.target_ref(), m.arrow.node_map(),
                 m.arrow.edge_map());
  Fpbc f = fpbc(l.arrow, match, l.inst);
  json out = {{"category", l.inst.name()},
              {"D", io::to_json(f.n.target(), l.inst)},
              {"n", io::to_json(f.n)},
              {"a", io::to_json(f.a)}};
  if (verify) {
    FpbcVerdict v = fpbc_verify(l.arrow, match, f.n, f.a, l.inst, bound);
    out["verify"] = {{"ok", v.ok},
                     {"bound", v.bound},
                     {"squares_checked", v.squares_checked},
                     {"counterexample", v.counterexample}};
  }
  return out.dump();
}

std::string complement(const std::string& m_doc) {
  auto m = io::parse_standalone_morphism(parse(m_doc, "m"));
  Complement c = strict_complement(m.arrow, m.inst);
  json out = {{"category", m.inst.name()},
              {"complement", io::to_json(*c.object, m.inst)},
              {"inclusion", io::to_json(c.inclusion)}};
  return out.dump();
}

std::string check_rule(const std::string& rule) {
  io::RuleDoc rd = io::parse_rule(parse(rule, "rule"), false);
  json out = {{"mode", to_string(rd.rule.mode)},
              {"category", rd.inst.name()},
              {"t_in_M", rd.t_in_M},
              {"local", nullptr}};
  if (rd.t_in_M) out["local"] = is_local_rule(rd.rule, rd.inst);
  return out.dump();
}

std::string run_law(const std::string& law, const std::string& category, std::uint64_t seed,
                    std::optional<std::size_t> bound, std::size_t instances,
                    bool inject_nonlocal) {
  laws::LawConfig config;
  config.seed = seed;
  if (bound) config.bounds = laws::Bounds{*bound, *bound + 1};
  config.instances = instances;
  config.inject_nonlocal = inject_nonlocal;
  auto report = laws::run_law(laws::parse_law(law), config, laws::instance_named(category));
  return laws::to_json(report).dump();
}

std::string graph_dot(const std::string& graph, const std::optional<std::string>& typegraph) {
  json doc = parse(graph, "graph");
  std::optional<Graph> tg;
  if (typegraph) tg = io::parse_plain_graph(parse(*typegraph, "typegraph"), "");
  CategoryInstance inst = io::instance_for(doc, tg);
  return io::export_dot(*io::parse_graph(doc, inst, ""));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Algebraic graph rewriting with AGREE, SqPO and PSqPO rules.";

  // The module keeps both exception types alive.
  static PyObject* error_type =
      py::exception<Error>(mod, "AgreeError", PyExc_ValueError).ptr();
  static PyObject* parse_error_type =
      py::exception<ParseError>(mod, "ParseError", error_type).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object exc = py::handle(parse_error_type)(e.what());
      exc.attr("issues") = e.issues();
      PyErr_SetObject(parse_error_type, exc.ptr());
    } catch (const Error& e) {
      PyErr_SetString(error_type, e.what());
    }
  });

  mod.def("matches", &matches, py::arg("rule"), py::arg("graph"));
  mod.def("apply", &apply, py::arg("rule"), py::arg("graph"), py::arg("match") = py::none(),
          py::arg("match_index") = 0);
  mod.def("classifier", &classifier, py::arg("graph"), py::arg("typegraph") = py::none());
  mod.def("fpbc", &run_fpbc, py::arg("l"), py::arg("m"), py::arg("verify") = false,
          py::arg("bound") = py::none());
  mod.def("complement", &complement, py::arg("m"));
  mod.def("check_rule", &check_rule, py::arg("rule"));
  mod.def("run_law", &run_law, py::arg("law"), py::arg("category") = "gr",
          py::arg("seed") = 0, py::arg("bound") = py::none(), py::arg("instances") = 0,
          py::arg("inject_nonlocal") = false);
  mod.def("graph_dot", &graph_dot, py::arg("graph"), py::arg("typegraph") = py::none());
  mod.def("law_names", [] {
    std::vector<std::string> names;
    for (auto law : laws::all_laws()) names.push_back(laws::to_string(law));
    return names;
  });
}
