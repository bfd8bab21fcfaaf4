#include "agree/io.hpp"

#include <fstream>
#include <sstream>

#include "agree/classifier.hpp"
#include "agree/error.hpp"

namespace agree::io {

namespace {

class Issues {
 public:
  void add(const std::string& where, const std::string& what) {
    list_.push_back((where.empty() ? "/" : where) + ": " + what);
  }
  bool empty() const { return list_.empty(); }
  void raise() const {
    if (!list_.empty()) throw ParseError(list_);
  }

 private:
  std::vector<std::string> list_;
};

std::string quote_id(const std::string& id) { return "'" + id + "'"; }

const json* field(const json& doc, const char* key) {
  if (!doc.is_object()) return nullptr;
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

std::optional<std::string> string_field(const json& doc, const char* key,
                                        const std::string& where, Issues& issues,
                                        bool required = true) {
  const json* v = field(doc, key);
  if (v == nullptr) {
    if (required) issues.add(where, std::string("missing field '") + key + "'");
    return std::nullopt;
  }
  if (!v->is_string()) {
    issues.add(where + "/" + key, "expected a string");
    return std::nullopt;
  }
  return v->get<std::string>();
}

const json& array_field(const json& doc, const char* key, const std::string& where,
                        Issues& issues) {
  static const json empty = json::array();
  const json* v = field(doc, key);
  if (v == nullptr) return empty;
  if (!v->is_array()) {
    issues.add(where + "/" + key, "expected an array");
    return empty;
  }
  return *v;
}

const json& map_field(const json& doc, const char* key, const std::string& where,
                      Issues& issues) {
  static const json empty = json::object();
  const json* v = field(doc, key);
  if (v == nullptr) return empty;
  if (!v->is_object()) {
    issues.add(where + "/" + key, "expected an object mapping ids to ids");
    return empty;
  }
  return *v;
}

// Graph part shared by plain and decorated documents. Returns false when the
// graph could not be built.
struct RawGraph {
  Object object;
  bool ok = true;
};

RawGraph read_graph(const json& doc, const CategoryInstance* inst,
                    const std::string& where, Issues& issues) {
  RawGraph out;
  if (!doc.is_object()) {
    issues.add(where, "expected a graph object with 'nodes' and 'edges'");
    out.ok = false;
    return out;
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "nodes" && key != "edges") {
      issues.add(where + "/" + key, "unknown field " + quote_id(key));
    }
  }
  const bool typed = inst != nullptr && inst->is_typed();
  const bool polarized = inst != nullptr && inst->is_polarized();
  Object& x = out.object;

  const json& nodes = array_field(doc, "nodes", where, issues);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = where + "/nodes/" + std::to_string(i);
    const json& node = nodes[i];
    if (!node.is_object()) {
      issues.add(at, "expected a node object");
      out.ok = false;
      continue;
    }
    auto id = string_field(node, "id", at, issues);
    if (!id) {
      out.ok = false;
      continue;
    }
    if (x.graph.has_node(*id)) {
      issues.add(at + "/id", "duplicate id " + quote_id(*id));
      out.ok = false;
      continue;
    }
    x.graph.add_node(*id);
    for (const auto& [key, value] : node.items()) {
      (void)value;
      if (key != "id" && key != "type" && key != "polarity") {
        issues.add(at + "/" + key, "unknown field " + quote_id(key));
      }
    }
    if (auto type = string_field(node, "type", at, issues, typed)) {
      if (!typed) {
        issues.add(at + "/type", "invariant violation: node type outside a typed instance");
      } else if (!inst->typegraph().has_node(*type)) {
        issues.add(at + "/type", "unknown id " + quote_id(*type) + " in the type graph");
      } else {
        x.typing.nodes[*id] = *type;
      }
    }
    if (const json* pol = field(node, "polarity")) {
      if (!polarized) {
        issues.add(at + "/polarity",
                   "invariant violation: polarity outside a polarized instance");
      } else if (!pol->is_array()) {
        issues.add(at + "/polarity", "expected an array of \"+\" and \"-\"");
      } else {
        for (std::size_t k = 0; k < pol->size(); ++k) {
          const json& sign = (*pol)[k];
          if (sign == "+") {
            x.polarity.plus.insert(*id);
          } else if (sign == "-") {
            x.polarity.minus.insert(*id);
          } else {
            issues.add(at + "/polarity/" + std::to_string(k),
                       "invalid polarity " + sign.dump() + ", expected \"+\" or \"-\"");
          }
        }
      }
    }
  }

  const json& edges = array_field(doc, "edges", where, issues);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = where + "/edges/" + std::to_string(i);
    const json& edge = edges[i];
    if (!edge.is_object()) {
      issues.add(at, "expected an edge object");
      out.ok = false;
      continue;
    }
    auto id = string_field(edge, "id", at, issues);
    auto src = string_field(edge, "src", at, issues);
    auto tgt = string_field(edge, "tgt", at, issues);
    for (const auto& [key, value] : edge.items()) {
      (void)value;
      if (key != "id" && key != "src" && key != "tgt" && key != "type") {
        issues.add(at + "/" + key, "unknown field " + quote_id(key));
      }
    }
    if (!id || !src || !tgt) {
      out.ok = false;
      continue;
    }
    bool good = true;
    if (x.graph.has_edge(*id)) {
      issues.add(at + "/id", "duplicate id " + quote_id(*id));
      good = false;
    }
    if (!x.graph.has_node(*src)) {
      issues.add(at + "/src", "dangling endpoint " + quote_id(*src) + " of edge " + quote_id(*id));
      good = false;
    }
    if (!x.graph.has_node(*tgt)) {
      issues.add(at + "/tgt", "dangling endpoint " + quote_id(*tgt) + " of edge " + quote_id(*id));
      good = false;
    }
    if (!good) {
      out.ok = false;
      continue;
    }
    x.graph.add_edge(*id, *src, *tgt);
    if (auto type = string_field(edge, "type", at, issues, typed)) {
      if (!typed) {
        issues.add(at + "/type", "invariant violation: edge type outside a typed instance");
      } else if (!inst->typegraph().has_edge(*type)) {
        issues.add(at + "/type", "unknown id " + quote_id(*type) + " in the type graph");
      } else {
        x.typing.edges[*id] = *type;
      }
    }
  }
  return out;
}

json polarity_json(const Object& x, const NodeId& n) {
  json out = json::array();
  if (x.is_plus(n)) out.push_back("+");
  if (x.is_minus(n)) out.push_back("-");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Text

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError({origin + ": malformed JSON at byte " + std::to_string(e.byte) +
                      ": " + e.what()});
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({path + ": cannot read file"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Serialization

json to_json(const Object& x, const CategoryInstance& inst) {
  json nodes = json::array();
  for (const auto& n : x.graph.nodes()) {
    json node = {{"id", n}};
    if (auto it = x.typing.nodes.find(n); it != x.typing.nodes.end()) {
      node["type"] = it->second;
    }
    if (inst.is_polarized()) node["polarity"] = polarity_json(x, n);
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& [e, ends] : x.graph.edges()) {
    json edge = {{"id", e}, {"src", ends.src}, {"tgt", ends.tgt}};
    if (auto it = x.typing.edges.find(e); it != x.typing.edges.end()) {
      edge["type"] = it->second;
    }
    edges.push_back(std::move(edge));
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

json to_json(const Morphism& f) {
  json nodes = json::object();
  for (const auto& [a, b] : f.node_map()) nodes[a] = b;
  json edges = json::object();
  for (const auto& [a, b] : f.edge_map()) edges[a] = b;
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

json to_standalone_json(const Morphism& f, const CategoryInstance& inst) {
  json out = to_json(f);
  out["source"] = to_json(f.source(), inst);
  out["target"] = to_json(f.target(), inst);
  if (inst.is_typed()) {
    out["typegraph"] = to_json(Object{inst.typegraph(), {}, {}}, CategoryInstance::gr());
  }
  return out;
}

json to_json(const Rule& rule, const CategoryInstance& inst) {
  const CategoryInstance& base = rule.mode == Mode::Psqpo ? CategoryInstance::gr() : inst;
  json out = {{"mode", to_string(rule.mode)},
              {"L", to_json(*rule.L(), base)},
              {"K", to_json(*rule.K(), base)},
              {"R", to_json(*rule.R(), base)},
              {"l", to_json(rule.l)},
              {"r", to_json(rule.r)}};
  if (rule.mode == Mode::Agree) {
    out["TK"] = to_json(*rule.TK(), base);
    out["t"] = to_json(rule.t);
  }
  if (rule.mode == Mode::Psqpo && rule.k_polarity) {
    out["polarity"] = {{"plus", rule.k_polarity->plus}, {"minus", rule.k_polarity->minus}};
  }
  if (base.is_typed()) {
    out["typegraph"] = to_json(Object{base.typegraph(), {}, {}}, CategoryInstance::gr());
  }
  return out;
}

json to_json(const RewriteTrace& trace, const CategoryInstance& inst) {
  const bool polarized = trace.polarized.has_value();
  const auto pol = CategoryInstance::grpol();
  const CategoryInstance& base = polarized ? CategoryInstance::gr() : inst;
  const CategoryInstance& left = polarized ? pol : inst;
  json out = {{"mode", to_string(trace.rule.mode)},
              {"L", to_json(*trace.rule.L(), base)},
              {"K", to_json(*trace.rule.K(), base)},
              {"R", to_json(*trace.rule.R(), base)},
              {"TK", to_json(*trace.rule.TK(), base)},
              {"TL", to_json(trace.l_prime.target(), left)},
              {"G", to_json(*trace.G(), base)},
              {"D", to_json(*trace.D(), base)},
              {"H", to_json(*trace.H(), base)}};
  out["arrows"] = {{"l", to_json(trace.rule.l)},       {"r", to_json(trace.rule.r)},
                   {"t", to_json(trace.rule.t)},       {"m", to_json(trace.m)},
                   {"l_prime", to_json(trace.l_prime)}, {"m_bar", to_json(trace.m_bar)},
                   {"n_prime", to_json(trace.n_prime)}, {"g", to_json(trace.g)},
                   {"n", to_json(trace.n)},             {"h", to_json(trace.h)},
                   {"p", to_json(trace.p)}};
  if (polarized) {
    const PolarizedPhase& ph = *trace.polarized;
    out["polarized"] = {{"K", to_json(ph.l.source(), pol)},
                        {"L", to_json(ph.l.target(), pol)},
                        {"G", to_json(ph.m.target(), pol)},
                        {"D", to_json(ph.g.source(), pol)},
                        {"TK", to_json(trace.n_prime.target(), pol)},
                        {"l", to_json(ph.l)},
                        {"m", to_json(ph.m)},
                        {"n", to_json(ph.n)},
                        {"g", to_json(ph.g)}};
  }
  if (base.is_typed()) {
    out["typegraph"] = to_json(Object{base.typegraph(), {}, {}}, CategoryInstance::gr());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

bool has_polarity(const json& graph_doc) {
  const json* nodes = field(graph_doc, "nodes");
  if (nodes == nullptr || !nodes->is_array()) return false;
  for (const auto& node : *nodes) {
    if (node.is_object() && node.contains("polarity")) return true;
  }
  return false;
}

CategoryInstance instance_for(const json& graph_doc,
                              const std::optional<Graph>& typegraph) {
  if (typegraph) return CategoryInstance::typed(*typegraph);
  if (has_polarity(graph_doc)) return CategoryInstance::grpol();
  return CategoryInstance::gr();
}

Graph parse_plain_graph(const json& doc, const std::string& where) {
  Issues issues;
  RawGraph raw = read_graph(doc, nullptr, where, issues);
  issues.raise();
  return raw.object.graph;
}

namespace {

ObjectRef read_object(const json& doc, const CategoryInstance& inst,
                      const std::string& where, Issues& issues) {
  RawGraph raw = read_graph(doc, &inst, where, issues);
  if (!raw.ok) return nullptr;
  if (inst.is_typed()) {
    // Missing types are already reported; skip the invariant check then.
    if (raw.object.typing.nodes.size() != raw.object.graph.node_count() ||
        raw.object.typing.edges.size() != raw.object.graph.edge_count()) {
      return nullptr;
    }
  }
  bool clean = true;
  for (const auto& problem : object_violations(raw.object, inst)) {
    issues.add(where, "invariant violation: " + problem);
    clean = false;
  }
  return clean ? make_object(std::move(raw.object)) : nullptr;
}

std::optional<Morphism> read_morphism(const json& doc, const ObjectRef& source,
                                      const ObjectRef& target,
                                      const CategoryInstance& inst,
                                      const std::string& where, Issues& issues) {
  if (!doc.is_object()) {
    issues.add(where, "expected a morphism object with 'nodes' and 'edges'");
    return std::nullopt;
  }
  bool good = true;
  auto read_map = [&](const char* key, const std::set<std::string>& from,
                      auto&& has_target, const char* what) {
    std::map<std::string, std::string> out;
    const json& m = map_field(doc, key, where, issues);
    for (const auto& [a, b] : m.items()) {
      const std::string at = where + "/" + key + "/" + a;
      if (!from.contains(a)) {
        issues.add(at, "unknown id " + quote_id(a) + " (no such " + what + " in the source)");
        good = false;
        continue;
      }
      if (!b.is_string()) {
        issues.add(at, "expected a string");
        good = false;
        continue;
      }
      std::string image = b.template get<std::string>();
      if (!has_target(image)) {
        issues.add(at, "unknown id " + quote_id(image) + " (no such " + what + " in the target)");
        good = false;
        continue;
      }
      out.emplace(a, std::move(image));
    }
    for (const auto& a : from) {
      if (!out.contains(a) && !m.contains(a)) {
        issues.add(where + "/" + key, std::string(what) + " " + quote_id(a) + " is not mapped");
        good = false;
      }
    }
    return out;
  };
  std::set<std::string> edge_ids;
  for (const auto& [e, ends] : source->graph.edges()) {
    (void)ends;
    edge_ids.insert(e);
  }
  NodeMap nodes = read_map("nodes", source->graph.nodes(),
                           [&](const std::string& id) { return target->graph.has_node(id); },
                           "node");
  EdgeMap edges = read_map("edges", edge_ids,
                           [&](const std::string& id) { return target->graph.has_edge(id); },
                           "edge");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "nodes" && key != "edges" && key != "source" && key != "target" &&
        key != "typegraph") {
      issues.add(where + "/" + key, "unknown field " + quote_id(key));
    }
  }
  if (!good) return std::nullopt;
  Morphism f(source, target, std::move(nodes), std::move(edges));
  auto report = validate_morphism(f, inst);
  if (!report.valid) {
    for (const auto& v : report.violations) issues.add(where, "invariant violation: " + v);
    if (report.structural_error) issues.add(where, *report.structural_error);
    return std::nullopt;
  }
  return f;
}

std::optional<Graph> read_typegraph(const json& doc, Issues& issues) {
  const json* tg = field(doc, "typegraph");
  if (tg == nullptr) return std::nullopt;
  RawGraph raw = read_graph(*tg, nullptr, "/typegraph", issues);
  if (!raw.ok) return Graph{};
  return raw.object.graph;
}

}  // namespace

ObjectRef parse_graph(const json& doc, const CategoryInstance& inst,
                      const std::string& where) {
  Issues issues;
  ObjectRef x = read_object(doc, inst, where, issues);
  issues.raise();
  return x;
}

Morphism parse_morphism(const json& doc, const ObjectRef& source, const ObjectRef& target,
                        const CategoryInstance& inst, const std::string& where) {
  Issues issues;
  auto f = read_morphism(doc, source, target, inst, where, issues);
  issues.raise();
  return *f;
}

StandaloneMorphism parse_standalone_morphism(const json& doc, const std::string& where) {
  Issues issues;
  if (!doc.is_object()) {
    issues.add(where, "expected a morphism object");
    issues.raise();
  }
  const json* source = field(doc, "source");
  const json* target = field(doc, "target");
  if (source == nullptr) issues.add(where, "missing field 'source'");
  if (target == nullptr) issues.add(where, "missing field 'target'");
  issues.raise();
  std::optional<Graph> tg = read_typegraph(doc, issues);
  issues.raise();
  CategoryInstance inst = tg ? CategoryInstance::typed(*tg)
                          : (has_polarity(*source) || has_polarity(*target))
                              ? CategoryInstance::grpol()
                              : CategoryInstance::gr();
  ObjectRef x = read_object(*source, inst, where + "/source", issues);
  ObjectRef y = read_object(*target, inst, where + "/target", issues);
  issues.raise();
  auto f = read_morphism(doc, x, y, inst, where, issues);
  issues.raise();
  return {inst, std::move(*f)};
}

RuleDoc parse_rule(const json& doc, bool check_t) {
  Issues issues;
  if (!doc.is_object()) {
    issues.add("", "expected a rule object");
    issues.raise();
  }
  static const std::set<std::string> known = {"mode", "L", "K", "R", "TK", "l",
                                              "r", "t", "polarity", "typegraph"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.contains(key)) issues.add("/" + key, "unknown field " + quote_id(key));
  }
  Mode mode = Mode::Agree;
  if (auto text = string_field(doc, "mode", "", issues)) {
    try {
      mode = parse_mode(*text);
    } catch (const UsageError& e) {
      issues.add("/mode", e.what());
    }
  }
  issues.raise();

  const bool agree = mode == Mode::Agree;
  for (const char* key : {"L", "K", "R", "l", "r"}) {
    if (!doc.contains(key)) issues.add("", std::string("missing field '") + key + "'");
  }
  for (const char* key : {"TK", "t"}) {
    if (agree && !doc.contains(key)) {
      issues.add("", std::string("missing field '") + key + "' required by mode agree");
    }
    if (!agree && doc.contains(key)) {
      issues.add(std::string("/") + key, "field " + quote_id(key) + " is not allowed for mode " +
                                             to_string(mode) + "; t is derived");
    }
  }
  if (mode == Mode::Psqpo) {
    if (!doc.contains("polarity")) issues.add("", "missing field 'polarity' required by mode psqpo");
    if (doc.contains("typegraph")) issues.add("/typegraph", "psqpo rules are untyped");
  } else if (doc.contains("polarity")) {
    issues.add("/polarity", "field 'polarity' is only allowed for mode psqpo");
  }
  std::optional<Graph> tg = read_typegraph(doc, issues);
  issues.raise();

  CategoryInstance inst = tg ? CategoryInstance::typed(*tg) : CategoryInstance::gr();
  ObjectRef L = read_object(doc["L"], inst, "/L", issues);
  ObjectRef K = read_object(doc["K"], inst, "/K", issues);
  ObjectRef R = read_object(doc["R"], inst, "/R", issues);
  ObjectRef TK = agree ? read_object(doc["TK"], inst, "/TK", issues) : nullptr;
  issues.raise();
  auto l = read_morphism(doc["l"], K, L, inst, "/l", issues);
  auto r = read_morphism(doc["r"], K, R, inst, "/r", issues);
  std::optional<Morphism> t;
  if (agree) t = read_morphism(doc["t"], K, TK, inst, "/t", issues);

  Polarity k_polarity;
  if (mode == Mode::Psqpo) {
    const json& pol = doc["polarity"];
    if (!pol.is_object()) {
      issues.add("/polarity", "expected {\"plus\": [...], \"minus\": [...]}");
    } else {
      for (const char* key : {"plus", "minus"}) {
        const json& ids = array_field(pol, key, "/polarity", issues);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const std::string at = std::string("/polarity/") + key + "/" + std::to_string(i);
          if (!ids[i].is_string()) {
            issues.add(at, "expected a string");
          } else if (!K->graph.has_node(ids[i].get<std::string>())) {
            issues.add(at, "unknown id " + quote_id(ids[i].get<std::string>()) + " (not a node of K)");
          } else {
            (key[0] == 'p' ? k_polarity.plus : k_polarity.minus).insert(ids[i].get<std::string>());
          }
        }
      }
    }
  }
  issues.raise();

  try {
    switch (mode) {
      case Mode::Agree:
        if (!check_t && !in_mono_class(*t, inst)) {
          return {inst, Rule{*l, *r, *t, Mode::Agree, std::nullopt}, false};
        }
        return {inst, make_agree_rule(*l, *r, *t, inst), true};
      case Mode::Sqpo:
        return {inst, make_sqpo_rule(*l, *r, inst), true};
      case Mode::Psqpo:
        return {inst, make_psqpo_rule(*l, *r, k_polarity), true};
    }
  } catch (const RuleError& e) {
    throw ParseError({std::string("/: invariant violation: ") + e.what()});
  }
  throw std::logic_error("unknown rule mode");
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_id(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string node_label(const Object& x, const NodeId& n) {
  std::string label = n;
  if (auto it = x.typing.nodes.find(n); it != x.typing.nodes.end()) label += ":" + it->second;
  std::string sign;
  if (x.is_plus(n)) sign += "+";
  if (x.is_minus(n)) sign += "-";
  if (!sign.empty()) label += " " + sign;
  return label;
}

std::string edge_label(const Object& x, const EdgeId& e) {
  std::string label = e;
  if (auto it = x.typing.edges.find(e); it != x.typing.edges.end()) label += ":" + it->second;
  return label;
}

void emit_items(std::ostringstream& out, const Object& x, const DotStyle& style,
                const std::string& prefix, const std::string& indent) {
  for (const auto& n : x.graph.nodes()) {
    std::vector<std::string> attrs;
    std::string label = node_label(x, n);
    if (!prefix.empty() || label != n) attrs.push_back("label=" + dot_id(label));
    if (style.dashed_nodes.contains(n)) attrs.push_back("style=dashed");
    out << indent << dot_id(prefix + n);
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  for (const auto& [e, ends] : x.graph.edges()) {
    out << indent << dot_id(prefix + ends.src) << " -> " << dot_id(prefix + ends.tgt)
        << " [label=" << dot_id(edge_label(x, e));
    if (style.dashed_edges.contains(e)) out << ", style=dashed";
    out << "];\n";
  }
}

// Items of y outside the image of f.
DotStyle outside_image(const Object& y, const NodeMap& nodes, const EdgeMap& edges) {
  DotStyle style;
  std::set<NodeId> hit_nodes;
  for (const auto& [a, b] : nodes) hit_nodes.insert(b);
  std::set<EdgeId> hit_edges;
  for (const auto& [a, b] : edges) hit_edges.insert(b);
  for (const auto& n : y.graph.nodes()) {
    if (!hit_nodes.contains(n)) style.dashed_nodes.insert(n);
  }
  for (const auto& [e, ends] : y.graph.edges()) {
    (void)ends;
    if (!hit_edges.contains(e)) style.dashed_edges.insert(e);
  }
  return style;
}

}  // namespace

std::string export_dot(const Object& x, const DotStyle& style) {
  std::ostringstream out;
  out << "digraph G {\n";
  emit_items(out, x, style, "", "  ");
  out << "}\n";
  return out.str();
}

std::string export_dot(const RewriteTrace& trace) {
  const Object& tl = trace.l_prime.target();
  const Object& l = *trace.rule.L();
  NodeMap l_nodes;
  for (const auto& n : l.graph.nodes()) l_nodes[n] = n;
  EdgeMap l_edges;
  for (const auto& [e, ends] : l.graph.edges()) {
    (void)ends;
    l_edges[e] = e;
  }

  struct Cluster {
    std::string name;
    const Object* object;
    DotStyle style;
  };
  const std::vector<Cluster> clusters = {
      {"L", trace.rule.L().get(), {}},
      {"K", trace.rule.K().get(), {}},
      {"R", trace.rule.R().get(), {}},
      {"TK", trace.rule.TK().get(),
       outside_image(*trace.rule.TK(), trace.rule.t.node_map(), trace.rule.t.edge_map())},
      {"TL", &tl, outside_image(tl, l_nodes, l_edges)},
      {"G", trace.G().get(), {}},
      {"D", trace.D().get(), {}},
      {"H", trace.H().get(), {}},
  };

  std::ostringstream out;
  out << "digraph G {\n";
  out << "  compound=true;\n";
  for (const auto& c : clusters) {
    out << "  subgraph " << dot_id("cluster_" + c.name) << " {\n";
    out << "    label=" << dot_id(c.name) << ";\n";
    emit_items(out, *c.object, c.style, c.name + "/", "    ");
    out << "  }\n";
  }

  struct Arrow {
    std::string name;
    const Morphism* f;
    std::string from;
    std::string to;
  };
  const std::vector<Arrow> arrows = {
      {"l", &trace.rule.l, "K", "L"},       {"r", &trace.rule.r, "K", "R"},
      {"t", &trace.rule.t, "K", "TK"},      {"m", &trace.m, "L", "G"},
      {"g", &trace.g, "D", "G"},            {"n", &trace.n, "K", "D"},
      {"n'", &trace.n_prime, "D", "TK"},    {"h", &trace.h, "D", "H"},
      {"p", &trace.p, "R", "H"},            {"l'", &trace.l_prime, "TK", "TL"},
      {"m_bar", &trace.m_bar, "G", "TL"},
  };
  for (const auto& a : arrows) {
    for (const auto& [x, y] : a.f->node_map()) {
      out << "  " << dot_id(a.from + "/" + x) << " -> " << dot_id(a.to + "/" + y)
          << " [label=" << dot_id(a.name) << ", style=dotted, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace agree::io
