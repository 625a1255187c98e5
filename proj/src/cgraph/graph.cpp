#include <algorithm>

#include "cgvv/cgraph.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

ConceptualGraph::ConceptualGraph(OntologyPtr ontology) : ontology_(std::move(ontology)) {
  if (!ontology_) throw GraphError("no-ontology", "a conceptual graph needs an ontology");
}

NodeId ConceptualGraph::add_concept(std::string type, Marker marker) {
  NodeId id{max_node_id().value + 1};
  concepts_.push_back({id, std::move(type), std::move(marker)});
  return id;
}

EdgeId ConceptualGraph::add_relation(std::string type, std::vector<NodeId> args) {
  EdgeId id{max_edge_id().value + 1};
  insert_relation({id, std::move(type), std::move(args)});
  return id;
}

void ConceptualGraph::insert_concept(ConceptNode node) {
  auto it = std::lower_bound(concepts_.begin(), concepts_.end(), node.id,
                             [](const ConceptNode& c, NodeId id) { return c.id < id; });
  if (it != concepts_.end() && it->id == node.id)
    throw GraphError("duplicate-id", "concept id " + std::to_string(node.id.value) + " already used");
  concepts_.insert(it, std::move(node));
}

void ConceptualGraph::insert_relation(RelationEdge edge) {
  for (NodeId a : edge.args)
    if (!find_concept(a))
      throw GraphError("dangling-argument", "relation '" + edge.type + "' references missing node " +
                                                std::to_string(a.value));
  auto it = std::lower_bound(relations_.begin(), relations_.end(), edge.id,
                             [](const RelationEdge& r, EdgeId id) { return r.id < id; });
  if (it != relations_.end() && it->id == edge.id)
    throw GraphError("duplicate-id", "relation id " + std::to_string(edge.id.value) + " already used");
  relations_.insert(it, std::move(edge));
}

const ConceptNode* ConceptualGraph::find_concept(NodeId id) const {
  auto it = std::lower_bound(concepts_.begin(), concepts_.end(), id,
                             [](const ConceptNode& c, NodeId v) { return c.id < v; });
  return (it != concepts_.end() && it->id == id) ? &*it : nullptr;
}

const RelationEdge* ConceptualGraph::find_relation(EdgeId id) const {
  auto it = std::lower_bound(relations_.begin(), relations_.end(), id,
                             [](const RelationEdge& r, EdgeId v) { return r.id < v; });
  return (it != relations_.end() && it->id == id) ? &*it : nullptr;
}

const ConceptNode& ConceptualGraph::concept_at(NodeId id) const {
  if (const auto* c = find_concept(id)) return *c;
  throw GraphError("unknown-node", "no concept node with id " + std::to_string(id.value));
}

const RelationEdge& ConceptualGraph::relation_at(EdgeId id) const {
  if (const auto* r = find_relation(id)) return *r;
  throw GraphError("unknown-edge", "no relation edge with id " + std::to_string(id.value));
}

std::string to_string(const Marker& m) {
  switch (m.kind) {
    case Marker::Kind::Generic:
      return "*";
    case Marker::Kind::Coref:
      return "*" + m.name;
    case Marker::Kind::Individual:
      return quote_if_needed(m.name);
  }
  return "*";
}

std::string describe(const ConceptNode& c) { return "[" + c.type + ": " + to_string(c.marker) + "]"; }

// ---------------------------------------------------------------------------

WellFormedReport well_formed(const ConceptualGraph& g) {
  WellFormedReport report;
  const auto& concepts = g.lattices().concepts;
  const auto& relations = g.lattices().relations;

  for (const auto& c : g.concepts())
    if (!concepts.contains(c.type))
      report.errors.push_back({"unknown-concept-type",
                               "concept " + describe(c) + " has unknown type '" + c.type + "'",
                               c.id, std::nullopt});

  for (const auto& r : g.relations()) {
    if (!relations.contains(r.type)) {
      report.errors.push_back(
          {"unknown-relation", "unknown relation type '" + r.type + "'", std::nullopt, r.id});
      continue;
    }
    const auto& sig = relations.signature(r.type);
    if (sig.size() != r.args.size()) {
      report.errors.push_back({"arity-mismatch",
                               "relation '" + r.type + "' expects " + std::to_string(sig.size()) +
                                   " arguments, got " + std::to_string(r.args.size()),
                               std::nullopt, r.id});
      continue;
    }
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const auto& arg = g.concept_at(r.args[i]);
      if (!concepts.contains(arg.type)) continue;
      if (!concepts.is_subtype(arg.type, sig[i]))
        report.errors.push_back({"signature-violation",
                                 "argument " + std::to_string(i + 1) + " of '" + r.type + "' is " +
                                     describe(arg) + " but the signature requires " + sig[i],
                                 arg.id, r.id});
    }
  }

  // Connectedness is only a warning: constraint conditions may be empty and
  // rule conclusions may be fragments.
  if (g.concepts().size() > 1) {
    std::map<NodeId, NodeId> parent;
    for (const auto& c : g.concepts()) parent[c.id] = c.id;
    std::function<NodeId(NodeId)> find = [&](NodeId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& r : g.relations())
      for (std::size_t i = 1; i < r.args.size(); ++i) parent[find(r.args[i])] = find(r.args[0]);
    std::size_t components = 0;
    for (const auto& c : g.concepts())
      if (find(c.id) == c.id) ++components;
    if (components > 1)
      report.warnings.push_back({"disconnected",
                                 "graph has " + std::to_string(components) + " connected components",
                                 std::nullopt, std::nullopt});
  }
  return report;
}

bool structurally_equal(const ConceptualGraph& a, const ConceptualGraph& b) {
  if (a.concepts().size() != b.concepts().size() || a.relations().size() != b.relations().size())
    return false;
  std::map<NodeId, NodeId> pos;
  for (std::size_t i = 0; i < a.concepts().size(); ++i) {
    const auto& x = a.concepts()[i];
    const auto& y = b.concepts()[i];
    if (x.type != y.type || x.marker != y.marker) return false;
    pos[x.id] = y.id;
  }
  for (std::size_t i = 0; i < a.relations().size(); ++i) {
    const auto& x = a.relations()[i];
    const auto& y = b.relations()[i];
    if (x.type != y.type || x.args.size() != y.args.size()) return false;
    for (std::size_t k = 0; k < x.args.size(); ++k)
      if (pos.at(x.args[k]) != y.args[k]) return false;
  }
  return true;
}

}  // namespace cgvv
