#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgvv/cgraph.hpp"
#include "cgvv/facts.hpp"
#include "cgvv/ingest.hpp"
#include "cgvv/ontology.hpp"
#include "cgvv/property.hpp"
#include "cgvv/reasoning.hpp"

namespace cgvv {

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string code;
  std::string message;
};

/// `file:line:col: severity[code]: message`
std::string render(const Diagnostic& d);
bool has_errors(std::span<const Diagnostic> diags);

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Knowledge files: graphs, rules, constraints, properties, generic
// properties, placements and granularities in any order.

struct GraphDecl {
  std::string name;
  ConceptualGraph graph;
  SourceLoc loc;
  std::map<NodeId, SourceLoc> node_locs;
  std::map<EdgeId, SourceLoc> edge_locs;
};

struct PlacementDecl {
  std::string property;
  Coordinates coords;
  SourceLoc loc;
};

struct Knowledge {
  std::vector<GraphDecl> graphs;
  std::vector<GraphRule> rules;
  std::vector<Constraint> constraints;
  std::vector<Property> properties;
  std::vector<GenericProperty> generics;
  std::vector<PlacementDecl> placements;
  std::vector<Granularity> granularities;
  /// Declaration position of every named item, by name.
  std::map<std::string, SourceLoc> locations;
};

/// Parses with recovery: a syntax error skips to the next top-level
/// declaration and is reported in `diags`.
Knowledge parse_knowledge(std::string_view text, const std::string& file, const OntologyPtr& onto,
                          std::vector<Diagnostic>& diags);

/// Single graph body (`[A] -> (r) -> [B] ...`), no block around it.
ConceptualGraph parse_graph_body(std::string_view text, const OntologyPtr& onto,
                                 const std::string& file = "<graph>");

/// Concept and relation declarations with their source positions.
struct OntologyDecls {
  std::vector<ConceptDecl> concepts;
  std::vector<RelationDecl> relations;
};
OntologyDecls parse_ontology_decls(std::string_view text, const std::string& file);

/// Like `load_lattices`, but reports problems as diagnostics (errors from
/// lattice validation are located at the offending declaration).
OntologyPtr load_ontology(std::string_view text, const std::string& file,
                          std::vector<Diagnostic>& diags);

/// Adds every fact of a facts file to `store`.
void parse_facts(std::string_view text, const std::string& file, FactStore& store,
                 std::vector<Diagnostic>& diags);

/// The shipped seed matrix of generic properties.
std::string_view reference_matrix_text();
std::vector<GenericProperty> reference_matrix();

// ---------------------------------------------------------------------------
// Serializers. Each output parses back to a structurally equal artifact.

std::string serialize(const Ontology& onto);
std::string serialize_graph(const std::string& name, const ConceptualGraph& g);
/// Throws Error(unserializable) if a frontier pair is not a shared
/// coreference variable.
std::string serialize(const GraphRule& r);
std::string serialize(const Constraint& c);
std::string serialize(const Property& p);
std::string serialize(const GenericProperty& gp);
std::string serialize(const PlacementDecl& p);
std::string serialize(const Granularity& g);
/// Variables, parameters, functions and trusted references, in store order.
std::string serialize(const FactStore& store);

/// Graph body only, one item per line with the given indent.
std::string serialize_body(const ConceptualGraph& g, const std::string& indent);

// ---------------------------------------------------------------------------

struct SourceFile {
  std::string path;
  std::string text;
};

/// Everything loaded from a set of input files.
struct Bundle {
  OntologyPtr ontology;
  std::vector<GraphDecl> graphs;
  std::vector<GraphRule> rules;
  std::vector<Constraint> constraints;
  std::vector<Property> properties;
  std::vector<GenericProperty> generics;
  std::vector<PlacementDecl> placements;
  Granularity granularity = Granularity::standard();
  FactStore facts;
  std::optional<EnterpriseModel> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
  const GraphDecl* find_graph(std::string_view name) const;
  /// The property graph: every property at its placement (or the default
  /// coordinates).
  PropertyGraph property_graph() const;
};

/// Files are dispatched on extension: `.onto` ontology, `.model` enterprise
/// model, `.facts` fact store, anything else the knowledge grammar. Without
/// an ontology file the reference ontology is used. Only unreadable files
/// throw (IoError); every other problem becomes a diagnostic.
Bundle parse_bundle(std::span<const std::string> paths);
Bundle parse_bundle(std::span<const SourceFile> sources);

}  // namespace cgvv
