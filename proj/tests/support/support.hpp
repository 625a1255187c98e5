#pragma once

// Fixture access, random instance generators and independent oracles shared
// by the unit tests and the acceptance runner. The oracles deliberately
// avoid the library's own algorithms: subsumption comes from a closure
// recomputed over the declared parents, projections from plain enumeration.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "cgvv/fol.hpp"
#include "cgvv/frontio.hpp"
#include "cgvv/projection.hpp"

namespace cgvv::testing {

using Rng = std::mt19937_64;

std::string fixture_path(const std::string& name);
std::string data_path(const std::string& name);
std::string read_file(const std::string& path);
/// Bundle of fixture files, by bare name.
Bundle load_fixtures(const std::vector<std::string>& names);

// ---------------------------------------------------------------------------
// Oracles

/// leq[i][j] <=> names[i] below names[j], from the declared parents only.
struct Closure {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;

  bool below(const std::string& a, const std::string& b) const;
  std::size_t index(const std::string& n) const;
};
Closure closure_of(const ConceptLattice& lat);
Closure closure_of(const RelationLattice& lat);

std::set<std::string> max_common_subtypes_oracle(const Closure& c, const std::string& a,
                                                 const std::string& b);

/// Every assignment of pattern nodes to target nodes, filtered by the type,
/// marker and edge conditions, times every choice of edge images.
std::set<Morphism> brute_force_projections(const ConceptualGraph& pattern,
                                           const ConceptualGraph& target);

/// Does Φ(query) hold in the model whose domain is the node set of
/// `target`, with Φ(target)'s atoms as the only true facts (closed upward
/// under the subtype orders)? Enumerates every variable assignment.
bool finite_model_entails(const ConceptualGraph& target, const ConceptualGraph& query);

// ---------------------------------------------------------------------------
// Random instances

/// Concept DAG T1..Tn (each below up to two earlier types) and relations
/// r1..rm of arity 1-3, some specialising an earlier relation.
OntologyPtr random_ontology(Rng& rng, std::size_t types = 7, std::size_t relations = 5);

struct GraphShape {
  std::size_t max_nodes = 6;
  std::size_t max_edges = 6;
  double individual = 0.3;
  double coref = 0.0;
  /// Edge arguments conform to the relation signatures.
  bool well_typed = true;
  /// Individual names may need quoting ("part 7", "42").
  bool odd_names = false;
  std::size_t min_nodes = 0;
};
ConceptualGraph random_graph(const OntologyPtr& onto, Rng& rng, const GraphShape& shape = {});

/// A pattern obtained from `target` by keeping some nodes, generalising
/// types and markers and keeping some edges (so that it usually projects).
ConceptualGraph random_generalisation(const ConceptualGraph& target, Rng& rng);

ExprPtr random_expr(Rng& rng, const std::vector<std::string>& names, int depth);

GraphRule random_rule(const OntologyPtr& onto, Rng& rng, const std::string& name);
Constraint random_constraint(const OntologyPtr& onto, Rng& rng, const std::string& name);
Property random_property(const OntologyPtr& onto, Rng& rng, const std::string& name);
GenericProperty random_generic(const OntologyPtr& onto, Rng& rng, const std::string& name);
PlacementDecl random_placement(Rng& rng, const std::string& property);
Granularity random_granularity(Rng& rng);
FactStore random_facts(Rng& rng);
EnterpriseModel random_model(Rng& rng);

// ---------------------------------------------------------------------------
// Structural comparison; `why` receives the first difference.

bool same(const Ontology& a, const Ontology& b, std::string* why = nullptr);
bool same(const GraphRule& a, const GraphRule& b, std::string* why = nullptr);
bool same(const Constraint& a, const Constraint& b, std::string* why = nullptr);
bool same(const Property& a, const Property& b, std::string* why = nullptr);
bool same(const GenericProperty& a, const GenericProperty& b, std::string* why = nullptr);
bool same(const FactStore& a, const FactStore& b, std::string* why = nullptr);

}  // namespace cgvv::testing
