#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgvv/cgraph.hpp"
#include "cgvv/facts.hpp"
#include "cgvv/reasoning.hpp"

namespace cgvv {

/// Ordered detail levels; the default is strategic > tactic > operational >
/// execution.
struct Granularity {
  struct Degree {
    std::string name;
    std::string temporal;  // optional annotation, e.g. "years"

    bool operator==(const Degree&) const = default;
  };

  std::string name = "default";
  std::vector<Degree> degrees;

  static Granularity standard();
  bool contains(std::string_view degree) const;
  /// Throws PropertyError(duplicate-degree).
  void validate() const;

  bool operator==(const Granularity&) const = default;
};

enum class RelationKind { Implication, Equivalence, Temporal, Influence, Emergence };
enum class Sense { Beneficial, Harmful };

std::string_view to_string(RelationKind k);

struct CausalRelation {
  RelationKind kind = RelationKind::Implication;
  Sense sense = Sense::Beneficial;  // Influence only
  /// Explicit conditions; when null, the condition is the conjunction of the
  /// fact references (true over an empty set).
  ExprPtr theta_c;
  ExprPtr theta_e;
  std::string d;  // opaque annotation
};

struct DegreeTag {
  std::string level;  // a granularity degree
  std::string tag;    // free type tag, may be empty

  bool operator==(const DegreeTag&) const = default;
};

/// A fact bound to a graph pattern for structural verification.
struct PatternBinding {
  std::string fact;
  ConceptualGraph pattern;
};

/// ⟨name, C_p, R_p, E_p, D_p⟩ plus the fact-to-pattern bindings.
struct Property {
  std::string name;
  std::vector<std::string> causes;
  std::vector<std::string> effects;
  CausalRelation relation;
  DegreeTag degree;
  std::vector<PatternBinding> bindings;

  const ConceptualGraph* pattern_for(std::string_view fact) const;
};

/// Throws PropertyError: no-effects, cause-effect-overlap, duplicate-binding.
void validate(const Property& p);

ExprPtr cause_condition(const Property& p);
ExprPtr effect_condition(const Property& p);

/// Implication: one positive constraint per disjunct of the cause condition,
/// whose alternatives are the disjuncts of the effect condition. An effect
/// condition that is a conjunction of negated facts yields negative
/// constraints instead. Equivalence adds the reverse direction. Patterns of
/// one conjunct are merged on shared coreference variables; frontiers are
/// the variables shared between condition and alternative.
/// Throws PropertyError: unsupported-kind, unbindable-fact,
/// unsupported-negation.
std::vector<Constraint> compile_to_constraints(const Property& p);

struct VerificationContext {
  const ConceptualGraph* graph = nullptr;  // the model graph as translated
  /// The model graph after rule saturation, if computed; logical properties
  /// are checked against it. Emergence always starts from `graph`.
  const ConceptualGraph* saturated = nullptr;
  const FactStore* store = nullptr;        // required for expression checks
  std::span<const GraphRule> rules;
  std::size_t bound = 100;
};

Verdict verify_property(const Property& p, const VerificationContext& ctx);

// ---------------------------------------------------------------------------
// Reference matrix

enum class Typology { System, ModelingLanguage, Axiomatic };
std::string_view to_string(Typology t);

struct Placeholder {
  std::string name;  // with the leading '$'
  std::string type;  // concept type the bound value must conform to
};

struct GenericProperty {
  std::string name;
  std::vector<std::string> perspectives;  // stability, reliability, integrity
  Typology typology = Typology::System;
  std::vector<Placeholder> placeholders;
  Property body;
};

/// Throws PropertyError: undeclared placeholders, unknown perspective.
void validate(const GenericProperty& gp);

/// Placeholder -> value; a value may carry its own type as `value:Type`.
using PlaceholderBindings = std::map<std::string, std::string>;
/// Concept type of a value (typically the model entity kind), if known.
using TypeOracle = std::function<std::optional<std::string>(std::string_view value)>;

/// Replaces placeholders in fact names, expressions and pattern markers.
/// Throws PropertyError: missing-binding, unknown-placeholder,
/// type-violation, cause-effect-overlap.
Property instantiate(const GenericProperty& gp, const PlaceholderBindings& bindings,
                     const TypeOracle& type_of, const ConceptLattice& lattice);

std::vector<const GenericProperty*> filter_matrix(std::span<const GenericProperty> matrix,
                                                  std::optional<std::string> perspective,
                                                  std::optional<Typology> typology);

// ---------------------------------------------------------------------------
// Property graph

enum class Target { UpperReferent, Referent, Lower };
enum class Scope { System, Model };
enum class Aspect { Structural, Behavioral, Functional };
enum class Epoch { Past, Present, Future };

struct Coordinates {
  Target target = Target::Referent;
  Scope scope = Scope::Model;
  Aspect aspect = Aspect::Structural;
  Epoch time = Epoch::Present;

  auto operator<=>(const Coordinates&) const = default;
  bool operator==(const Coordinates&) const = default;
};

std::string_view to_string(Target t);
std::string_view to_string(Scope s);
std::string_view to_string(Aspect a);
std::string_view to_string(Epoch e);
/// "referent model.structural present"
std::string to_string(const Coordinates& c);

struct FactSetNode {
  std::vector<std::string> facts;  // sorted, unique
};

struct PropertyArc {
  std::size_t from = 0;  // cause node
  std::size_t to = 0;    // effect node
  RelationKind kind = RelationKind::Implication;
  std::string property;
};

struct Placement {
  Property property;
  Coordinates coords;
};

class PropertyGraph {
 public:
  /// Registers the property and links its cause and effect fact-sets,
  /// reusing existing nodes. Throws PropertyError(duplicate-property).
  void place(Property p, Coordinates coords);

  const std::vector<FactSetNode>& nodes() const { return nodes_; }
  const std::vector<PropertyArc>& arcs() const { return arcs_; }
  const std::vector<Placement>& placements() const { return placements_; }

 private:
  std::size_t node_for(std::vector<std::string> facts);

  std::vector<FactSetNode> nodes_;
  std::vector<PropertyArc> arcs_;
  std::vector<Placement> placements_;
};

PropertyGraph place(PropertyGraph pg, Property p, Coordinates coords);

struct PropertyResult {
  std::string name;
  Coordinates coords;
  Verdict verdict;
};

struct PropertyReport {
  std::vector<PropertyResult> entries;  // ordered by coordinates, then placement
  Status overall = Status::Satisfied;
};

/// Properties named by a PropertyRef fact are trusted and not re-proved.
/// Throws PropertyError(unresolved-fact) for references that are neither
/// facts nor bound patterns.
PropertyReport check_property_graph(const PropertyGraph& pg, const VerificationContext& ctx);

}  // namespace cgvv
