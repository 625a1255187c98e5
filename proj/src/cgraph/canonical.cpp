#include <algorithm>
#include <numeric>
#include <set>

#include "cgvv/cgraph.hpp"

namespace cgvv {

namespace {

std::set<std::string> coref_names(const ConceptualGraph& g) {
  std::set<std::string> out;
  for (const auto& c : g.concepts())
    if (c.marker.is_coref()) out.insert(c.marker.name);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

struct Merged {
  ConceptualGraph graph;
  std::map<NodeId, NodeId> remap;
};

// Collapses each group onto its smallest id. Members are folded in id order:
// the type becomes the first maximal common subtype, an individual marker
// wins over coreference variables, which win over plain generics.
Merged merge_groups(const ConceptualGraph& g, std::vector<std::vector<NodeId>> groups) {
  const auto& lattice = g.lattices().concepts;
  std::map<NodeId, NodeId> remap;
  std::map<NodeId, ConceptNode> merged_nodes;

  for (auto& group : groups) {
    if (group.size() < 2) continue;
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    const NodeId rep = group.front();
    ConceptNode node = g.concept_at(rep);
    for (std::size_t i = 1; i < group.size(); ++i) {
      const ConceptNode& other = g.concept_at(group[i]);
      std::vector<std::string> common;
      try {
        common = lattice.max_common_subtypes(node.type, other.type);
      } catch (const OntologyError& e) {
        throw GraphError("not-joinable", e.what());
      }
      if (common.empty())
        throw GraphError("not-joinable", "cannot merge " + describe(node) + " with " +
                                             describe(other) + ": no common subtype");
      node.type = common.front();
      if (other.marker.is_individual()) {
        if (node.marker.is_individual() && node.marker.name != other.marker.name)
          throw GraphError("not-joinable", "cannot merge " + describe(node) + " with " +
                                               describe(other) + ": distinct individuals");
        node.marker = other.marker;
      } else if (other.marker.is_coref() && node.marker.kind == Marker::Kind::Generic) {
        node.marker = other.marker;
      }
    }
    for (NodeId m : group) remap[m] = rep;
    merged_nodes[rep] = std::move(node);
  }

  ConceptualGraph out(g.ontology());
  for (const auto& c : g.concepts()) {
    auto it = remap.find(c.id);
    if (it == remap.end()) {
      out.insert_concept(c);
      remap[c.id] = c.id;
    } else if (it->second == c.id) {
      out.insert_concept(merged_nodes.at(c.id));
    }
  }
  for (const auto& r : g.relations()) {
    RelationEdge e = r;
    for (auto& a : e.args) a = remap.at(a);
    out.insert_relation(std::move(e));
  }
  return {std::move(out), std::move(remap)};
}

struct Appended {
  ConceptualGraph graph;
  std::map<NodeId, NodeId> right_map;
};

Appended append(const ConceptualGraph& left, const ConceptualGraph& right, bool rename_clashes) {
  if (left.ontology() != right.ontology())
    throw GraphError("lattice-mismatch", "graphs are governed by different ontologies");
  std::map<std::string, std::string> renamed;
  if (rename_clashes) {
    const auto left_names = coref_names(left);
    const auto right_names = coref_names(right);
    auto taken = left_names;
    taken.insert(right_names.begin(), right_names.end());
    for (const auto& v : right_names) {
      if (!left_names.count(v)) continue;
      auto fresh = fresh_name(v, taken);
      taken.insert(fresh);
      renamed[v] = fresh;
    }
  }
  Appended out{left, {}};
  const std::uint32_t node_base = left.max_node_id().value;
  const std::uint32_t edge_base = left.max_edge_id().value;
  std::uint32_t next = node_base;
  for (const auto& c : right.concepts()) {
    ConceptNode n = c;
    n.id = NodeId{++next};
    if (n.marker.is_coref()) {
      if (auto it = renamed.find(n.marker.name); it != renamed.end()) n.marker.name = it->second;
    }
    out.right_map[c.id] = n.id;
    out.graph.insert_concept(std::move(n));
  }
  std::uint32_t next_edge = edge_base;
  for (const auto& r : right.relations()) {
    RelationEdge e = r;
    e.id = EdgeId{++next_edge};
    for (auto& a : e.args) a = out.right_map.at(a);
    out.graph.insert_relation(std::move(e));
  }
  return out;
}

}  // namespace

ConceptualGraph copy(const ConceptualGraph& g) {
  const auto names = coref_names(g);
  std::set<std::string> taken = names;
  std::map<std::string, std::string> renamed;
  for (const auto& v : names) {
    auto fresh = fresh_name(v, taken);
    taken.insert(fresh);
    renamed[v] = fresh;
  }
  const std::uint32_t node_offset = g.max_node_id().value;
  const std::uint32_t edge_offset = g.max_edge_id().value;
  ConceptualGraph out(g.ontology());
  for (const auto& c : g.concepts()) {
    ConceptNode n = c;
    n.id = NodeId{c.id.value + node_offset};
    if (n.marker.is_coref()) n.marker.name = renamed.at(n.marker.name);
    out.insert_concept(std::move(n));
  }
  for (const auto& r : g.relations()) {
    RelationEdge e = r;
    e.id = EdgeId{r.id.value + edge_offset};
    for (auto& a : e.args) a = NodeId{a.value + node_offset};
    out.insert_relation(std::move(e));
  }
  return out;
}

ConceptualGraph restrict(const ConceptualGraph& g, NodeId node,
                         const std::optional<std::string>& new_type,
                         const std::optional<Marker>& new_marker) {
  const ConceptNode& original = g.concept_at(node);
  const auto& lattice = g.lattices().concepts;
  ConceptNode updated = original;

  if (new_type) {
    if (!lattice.contains(*new_type))
      throw GraphError("unknown-concept-type", "unknown concept type '" + *new_type + "'");
    if (*new_type == original.type || !lattice.is_subtype(*new_type, original.type))
      throw GraphError("type-not-subtype", "'" + *new_type + "' is not a strict subtype of '" +
                                               original.type + "'");
    updated.type = *new_type;
  }
  if (new_marker) {
    if (!new_marker->is_individual())
      throw GraphError("invalid-marker", "restriction can only introduce an individual marker");
    if (original.marker.is_individual())
      throw GraphError("marker-already-individual",
                       describe(original) + " already carries an individual marker");
    updated.marker = *new_marker;
  }

  ConceptualGraph out(g.ontology());
  for (const auto& c : g.concepts()) out.insert_concept(c.id == node ? updated : c);
  for (const auto& r : g.relations()) {
    if (g.lattices().relations.contains(r.type)) {
      const auto& sig = g.lattices().relations.signature(r.type);
      for (std::size_t i = 0; i < r.args.size() && i < sig.size(); ++i)
        if (r.args[i] == node && !lattice.is_subtype(updated.type, sig[i]))
          throw GraphError("signature-violation", "restricting " + describe(original) + " to " +
                                                      describe(updated) + " violates '" + r.type +
                                                      "'");
    }
    out.insert_relation(r);
  }
  return out;
}

ConceptualGraph simplify(const ConceptualGraph& g) {
  ConceptualGraph out(g.ontology());
  for (const auto& c : g.concepts()) out.insert_concept(c);
  std::set<std::pair<std::string, std::vector<NodeId>>> seen;
  for (const auto& r : g.relations())
    if (seen.emplace(r.type, r.args).second) out.insert_relation(r);
  return out;
}

JoinResult join_with_map(const ConceptualGraph& left, const ConceptualGraph& right,
                         std::span<const std::pair<NodeId, NodeId>> pairs) {
  Appended raw = append(left, right, /*rename_clashes=*/true);

  // Union-find over the raw union's node ids.
  std::map<NodeId, NodeId> parent;
  for (const auto& c : raw.graph.concepts()) parent[c.id] = c.id;
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    while (parent.at(x) != x) x = parent[x] = parent.at(parent.at(x));
    return x;
  };
  for (const auto& [l, r] : pairs) {
    if (!left.find_concept(l))
      throw GraphError("unknown-node", "join pair references missing left node " +
                                           std::to_string(l.value));
    auto it = raw.right_map.find(r);
    if (it == raw.right_map.end())
      throw GraphError("unknown-node", "join pair references missing right node " +
                                           std::to_string(r.value));
    NodeId a = find(l), b = find(it->second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<NodeId, std::vector<NodeId>> classes;
  for (const auto& c : raw.graph.concepts()) classes[find(c.id)].push_back(c.id);
  std::vector<std::vector<NodeId>> groups;
  for (auto& [rep, members] : classes)
    if (members.size() > 1) groups.push_back(std::move(members));

  Merged merged = merge_groups(raw.graph, std::move(groups));
  JoinResult out{std::move(merged.graph), {}};
  for (const auto& [r, mid] : raw.right_map) out.right_map[r] = merged.remap.at(mid);
  return out;
}

ConceptualGraph join(const ConceptualGraph& left, const ConceptualGraph& right,
                     std::span<const std::pair<NodeId, NodeId>> pairs) {
  return join_with_map(left, right, pairs).graph;
}

ConceptualGraph normalize_coref(const ConceptualGraph& g) {
  std::map<std::string, std::vector<NodeId>> by_name;
  for (const auto& c : g.concepts())
    if (c.marker.is_coref()) by_name[c.marker.name].push_back(c.id);
  std::vector<std::vector<NodeId>> groups;
  for (auto& [name, ids] : by_name)
    if (ids.size() > 1) groups.push_back(std::move(ids));
  if (groups.empty()) return g;
  return merge_groups(g, std::move(groups)).graph;
}

ConceptualGraph disjoint_union(const ConceptualGraph& left, const ConceptualGraph& right) {
  return append(left, right, /*rename_clashes=*/false).graph;
}

}  // namespace cgvv
