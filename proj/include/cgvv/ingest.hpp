#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "cgvv/cgraph.hpp"
#include "cgvv/facts.hpp"

namespace cgvv {

enum class EntityKind { Process, Activity, Resource, Actor, Flow, Location };

std::string_view to_string(EntityKind k);
std::optional<EntityKind> entity_kind_from(std::string_view keyword);

struct Entity {
  std::string id;
  EntityKind kind = EntityKind::Activity;
  /// Concept type; the kind's own type unless refined (`resource R: Support`).
  std::string type;
  std::vector<std::pair<std::string, Value>> attributes;
  /// Time series declared on the entity; exposed as `<name>.<id>` facts.
  std::vector<ModelingVariable> variables;
  SourceLoc loc;
};

struct Link {
  std::string kind;  // composed_of, has_input, has_output, uses_resource, ...
  std::string source;
  std::string target;
  SourceLoc loc;

  auto operator<=>(const Link& o) const {
    return std::tie(kind, source, target) <=> std::tie(o.kind, o.source, o.target);
  }
  bool operator==(const Link& o) const {
    return std::tie(kind, source, target) == std::tie(o.kind, o.source, o.target);
  }
};

inline constexpr std::string_view kOperationalDomain = "operational_domain";

struct EnterpriseModel {
  std::vector<Entity> entities;
  std::vector<Link> links;

  const Entity* find(std::string_view id) const;
  bool empty() const { return entities.empty() && links.empty(); }
};

/// Throws ModelError: duplicate-entity, dangling-link, kind-violation,
/// invalid-domain.
void validate(const EnterpriseModel& m);

/// Same entities (with attributes and variables) and links, ignoring order
/// and source locations.
bool equivalent(const EnterpriseModel& a, const EnterpriseModel& b);

/// Throws ParseError for syntax errors and ModelError for invalid models.
EnterpriseModel parse_model(std::string_view text, const std::string& file = "<model>");

/// Canonical flat rendering in the model grammar.
std::string render_model(const EnterpriseModel& m);

/// One `[Type: id]` node per entity, one edge per link, and one edge per
/// attribute to a value node (shared per distinct value type and value).
/// Throws ModelError(missing-counterpart) when the ontology lacks a type or
/// relation, or kind-violation when a refined type is not below its kind.
ConceptualGraph model_to_cg(const EnterpriseModel& m, const OntologyPtr& onto);

// ---------------------------------------------------------------------------

using HandleEvaluator = std::function<Value(const EnterpriseModel&, std::span<const Value> args,
                                            std::optional<TimePoint> t)>;

struct HandleSpec {
  HandleFunction signature;
  HandleEvaluator evaluate;
};

class HandleFunctionRegistry {
 public:
  /// inputs, outputs, domain_of, precedes, resource_of, colocated.
  static HandleFunctionRegistry builtins();

  /// Throws ModelError(duplicate-function).
  void add(HandleSpec spec);
  const HandleSpec* find(std::string_view name) const;
  const std::vector<HandleSpec>& specs() const { return specs_; }

 private:
  std::vector<HandleSpec> specs_;
};

/// Attributes become parameters named `<attr>.<entity>` (the operational
/// domain of a flow becomes `domain_of.<flow>`), entity variables become
/// modeling variables, and every registry function becomes a handle
/// function fact evaluated against a copy of the model.
FactStore extract_facts(const EnterpriseModel& m,
                        const HandleFunctionRegistry& registry = HandleFunctionRegistry::builtins());

}  // namespace cgvv
