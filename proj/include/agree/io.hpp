#pragma once

// JSON documents for graphs, morphisms, rules and traces, and DOT export.
//
//   GraphDoc    {"nodes": [{"id", "type"?, "polarity"?: ["+","-"]}],
//                "edges": [{"id", "src", "tgt", "type"?}]}
//   MorphismDoc {"nodes": {src: tgt}, "edges": {src: tgt}}
//               standalone form adds "source", "target" and "typegraph"?
//   RuleDoc     {"mode", "L", "K", "R", "TK"?, "l", "r", "t"?,
//                "polarity"?: {"plus": [...], "minus": [...]}, "typegraph"?}
//
// Serialization is canonical: keys sorted, arrays sorted by id, two-space
// indentation and a trailing newline.

#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "agree/graph.hpp"
#include "agree/rewrite.hpp"

namespace agree::io {

using json = nlohmann::json;

/// Parses text; malformed JSON raises ParseError with the byte offset.
json parse_text(const std::string& text, const std::string& origin = "<input>");
/// Reads and parses a file; a missing file raises ParseError.
json read_file(const std::string& path);
/// Canonical text of a document.
std::string dump(const json& doc);
/// Writes dump(doc) with LF line endings.
void write_file(const std::string& path, const std::string& text);

/// Polarity fields are written for every node iff the instance is polarized.
json to_json(const Object& x, const CategoryInstance& inst);
json to_json(const Morphism& f);
/// MorphismDoc with its source and target (and type graph if TYPED).
json to_standalone_json(const Morphism& f, const CategoryInstance& inst);
json to_json(const Rule& rule, const CategoryInstance& inst);
json to_json(const RewriteTrace& trace, const CategoryInstance& inst);

/// The instance a document lives in: TYPED when a type graph is given,
/// polarized when some node carries a "polarity" field, Gr otherwise.
CategoryInstance instance_for(const json& graph_doc, const std::optional<Graph>& typegraph);
bool has_polarity(const json& graph_doc);

/// Plain graph (the "typegraph" field of documents).
Graph parse_plain_graph(const json& doc, const std::string& where = "");

/// Object of the given instance. Every problem found is reported, each
/// with a JSON pointer, in one ParseError.
ObjectRef parse_graph(const json& doc, const CategoryInstance& inst,
                      const std::string& where = "");
Morphism parse_morphism(const json& doc, const ObjectRef& source,
                        const ObjectRef& target, const CategoryInstance& inst,
                        const std::string& where = "");

struct StandaloneMorphism {
  CategoryInstance inst;
  Morphism arrow;
};

/// MorphismDoc carrying "source" and "target".
StandaloneMorphism parse_standalone_morphism(const json& doc,
                                             const std::string& where = "");

struct RuleDoc {
  CategoryInstance inst;
  Rule rule;
  /// False when t is not a mono in M; only possible with check_t = false.
  bool t_in_M = true;
};

/// Builds a rule from a RuleDoc. The instance is TYPED when "typegraph" is
/// present, Gr otherwise. With check_t = false an AGREE rule whose t is not
/// in M is still returned (flagged) so it can be reported.
RuleDoc parse_rule(const json& doc, bool check_t = true);

struct DotStyle {
  std::set<NodeId> dashed_nodes;
  std::set<EdgeId> dashed_edges;
};

std::string export_dot(const Object& x, const DotStyle& style = {});
/// One cluster per object of the step (L, K, R, TK, TL, G, D, H) and dotted
/// inter-cluster edges for the node maps of l, r, t, m, g, n, n', h, p, l', m̄.
std::string export_dot(const RewriteTrace& trace);

}  // namespace agree::io
