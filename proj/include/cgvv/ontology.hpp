#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgvv/error.hpp"

namespace cgvv {

inline constexpr std::string_view kUniversalType = "Universal";

struct ConceptDecl {
  std::string name;
  std::vector<std::string> parents;  // empty means "directly under Universal"
  SourceLoc loc;
};

struct RelationDecl {
  std::string name;
  std::vector<std::string> signature;
  std::vector<std::string> parents;
  SourceLoc loc;
};

/// Partial order of concept types rooted at `Universal`. Stored as a DAG
/// plus its reflexive-transitive closure; greatest lower bounds need not be
/// unique.
class ConceptLattice {
 public:
  ConceptLattice();

  /// Validates the declarations (unknown parents, duplicates, cycles) and
  /// computes the closure. Throws OntologyError.
  static ConceptLattice build(const std::vector<ConceptDecl>& decls);

  const std::string& top() const { return names_.front(); }
  bool contains(std::string_view type) const;
  /// Declaration order, `Universal` first.
  const std::vector<std::string>& types() const { return names_; }
  std::vector<std::string> parents(std::string_view type) const;
  std::vector<std::pair<std::string, std::string>> subtype_edges() const;

  bool is_subtype(std::string_view a, std::string_view b) const;
  std::vector<std::string> max_common_subtypes(std::string_view a,
                                               std::string_view b) const;

 private:
  std::size_t index_of(std::string_view type) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<bool>> leq_;  // leq_[a][b] <=> a is a subtype of b
};

/// Relation types with signatures. Subrelations keep the parent's arity and
/// specialise each argument type.
class RelationLattice {
 public:
  RelationLattice() = default;

  static RelationLattice build(const std::vector<RelationDecl>& decls,
                               const ConceptLattice& concepts);

  bool contains(std::string_view rel) const;
  const std::vector<std::string>& relations() const { return names_; }
  const std::vector<std::string>& signature(std::string_view rel) const;
  std::size_t arity(std::string_view rel) const { return signature(rel).size(); }
  std::vector<std::string> parents(std::string_view rel) const;
  std::vector<std::pair<std::string, std::string>> subtype_edges() const;

  bool is_subtype(std::string_view a, std::string_view b) const;

 private:
  std::size_t index_of(std::string_view rel) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::string>> signatures_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<bool>> leq_;
};

struct Ontology {
  ConceptLattice concepts;
  RelationLattice relations;
};

using OntologyPtr = std::shared_ptr<const Ontology>;

/// Parses the line-oriented ontology format. Throws ParseError (syntax,
/// with line/column) or OntologyError (cycles, unknown types).
OntologyPtr load_lattices(std::string_view text, const std::string& file = "<ontology>");

/// The ontology shipped with the library (four-part taxonomy plus the
/// enterprise entity concepts and relations).
OntologyPtr reference_ontology();
std::string_view reference_ontology_text();

// ---------------------------------------------------------------------------
// Object model -> lattices

struct ObjectModel {
  struct Attribute {
    std::string owner;
    std::string name;
    std::string value_class;
  };
  struct Association {
    std::string name;
    std::string source;
    std::string target;
  };
  struct Method {
    std::string owner;
    std::string name;
  };

  std::vector<std::string> classes;
  std::vector<std::pair<std::string, std::string>> inheritance;  // (child, parent)
  std::vector<Attribute> attributes;
  std::vector<Association> associations;
  std::vector<Method> methods;
};

struct DerivedOntology {
  Ontology ontology;
  /// One entry per relation renamed to resolve a name collision.
  std::vector<std::string> collisions;
};

/// Class -> concept, inheritance -> concept hierarchy, attribute /
/// association / method -> binary relation. Attribute value classes that are
/// not declared classes become concept types directly under Universal.
/// Methods get the signature (owner, Universal).
DerivedOntology derive_lattices(const ObjectModel& om);

}  // namespace cgvv
