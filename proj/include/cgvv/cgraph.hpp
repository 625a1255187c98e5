#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgvv/ontology.hpp"

namespace cgvv {

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  auto operator<=>(const EdgeId&) const = default;
};

/// Individual name, generic `*`, or named coreference variable `*x`.
/// A coreference variable is generic as far as projection and the
/// first-order translation are concerned.
struct Marker {
  enum class Kind { Generic, Individual, Coref };

  Kind kind = Kind::Generic;
  std::string name;

  static Marker generic() { return {}; }
  static Marker individual(std::string n) { return {Kind::Individual, std::move(n)}; }
  static Marker coref(std::string n) { return {Kind::Coref, std::move(n)}; }

  bool is_individual() const { return kind == Kind::Individual; }
  bool is_coref() const { return kind == Kind::Coref; }

  bool operator==(const Marker&) const = default;
};

struct ConceptNode {
  NodeId id;
  std::string type;
  Marker marker;

  bool operator==(const ConceptNode&) const = default;
};

struct RelationEdge {
  EdgeId id;
  std::string type;
  std::vector<NodeId> args;  // ordered; arrow notation [A]->(r)->[B] stores A then B

  bool operator==(const RelationEdge&) const = default;
};

/// Bipartite graph of concept nodes and relation edges, governed by an
/// ontology. Nodes and edges are kept sorted by id. Type correctness is not
/// enforced on insertion; `well_formed` reports violations instead. Edges
/// may only reference existing concept nodes.
class ConceptualGraph {
 public:
  explicit ConceptualGraph(OntologyPtr ontology);

  const OntologyPtr& ontology() const { return ontology_; }
  const Ontology& lattices() const { return *ontology_; }

  NodeId add_concept(std::string type, Marker marker = Marker::generic());
  EdgeId add_relation(std::string type, std::vector<NodeId> args);

  /// Insert with an explicit id; throws GraphError on duplicates.
  void insert_concept(ConceptNode node);
  void insert_relation(RelationEdge edge);

  std::span<const ConceptNode> concepts() const { return concepts_; }
  std::span<const RelationEdge> relations() const { return relations_; }

  const ConceptNode* find_concept(NodeId id) const;
  const RelationEdge* find_relation(EdgeId id) const;
  const ConceptNode& concept_at(NodeId id) const;
  const RelationEdge& relation_at(EdgeId id) const;

  bool empty() const { return concepts_.empty() && relations_.empty(); }
  NodeId max_node_id() const { return concepts_.empty() ? NodeId{} : concepts_.back().id; }
  EdgeId max_edge_id() const { return relations_.empty() ? EdgeId{} : relations_.back().id; }

 private:
  OntologyPtr ontology_;
  std::vector<ConceptNode> concepts_;
  std::vector<RelationEdge> relations_;
};

/// `[Type: marker]`
std::string to_string(const Marker& m);
std::string describe(const ConceptNode& c);

// ---------------------------------------------------------------------------
// Canonical formation rules. All return new graphs.

/// Fresh node/edge ids (disjoint from the input's) and consistently renamed
/// coreference variables.
ConceptualGraph copy(const ConceptualGraph& g);

/// Specialise one node: strictly narrower type and/or generic -> individual.
ConceptualGraph restrict(const ConceptualGraph& g, NodeId node,
                         const std::optional<std::string>& new_type,
                         const std::optional<Marker>& new_marker);

/// Drops duplicate relation edges (same type, same ordered args), keeping the
/// one with the smallest id.
ConceptualGraph simplify(const ConceptualGraph& g);

struct JoinResult {
  ConceptualGraph graph;
  /// Where every node of the right operand ended up.
  std::map<NodeId, NodeId> right_map;
};

/// Disjoint union of `left` and `right` with each (left id, right id) pair
/// merged. Left ids are preserved; right nodes and edges get ids above the
/// left maxima. A merged node takes the first maximal common subtype of its
/// members and an individual marker when one is present. Right coreference
/// variables that clash with left ones are renamed apart.
JoinResult join_with_map(const ConceptualGraph& left, const ConceptualGraph& right,
                         std::span<const std::pair<NodeId, NodeId>> pairs);
ConceptualGraph join(const ConceptualGraph& left, const ConceptualGraph& right,
                     std::span<const std::pair<NodeId, NodeId>> pairs);

/// Merges every group of nodes sharing a coreference variable.
ConceptualGraph normalize_coref(const ConceptualGraph& g);

/// Union without renaming coreference variables, so that shared variables
/// can later be identified by `normalize_coref`.
ConceptualGraph disjoint_union(const ConceptualGraph& left, const ConceptualGraph& right);

// ---------------------------------------------------------------------------

struct GraphIssue {
  std::string code;
  std::string message;
  std::optional<NodeId> node;
  std::optional<EdgeId> edge;
};

struct WellFormedReport {
  std::vector<GraphIssue> errors;
  std::vector<GraphIssue> warnings;

  bool ok() const { return errors.empty(); }
};

WellFormedReport well_formed(const ConceptualGraph& g);

/// Same node sequence (by id order) with equal types and markers, and same
/// edge sequence with equal types and positionally corresponding arguments.
bool structurally_equal(const ConceptualGraph& a, const ConceptualGraph& b);

}  // namespace cgvv

template <>
struct std::hash<cgvv::NodeId> {
  std::size_t operator()(cgvv::NodeId id) const noexcept { return id.value; }
};

template <>
struct std::hash<cgvv::EdgeId> {
  std::size_t operator()(cgvv::EdgeId id) const noexcept { return id.value; }
};
