#include <algorithm>
#include <set>

#include "cgvv/ontology.hpp"

namespace cgvv {

namespace {

void require_class(const std::set<std::string>& classes, const std::string& name,
                   const std::string& context) {
  if (!classes.count(name))
    throw OntologyError("unknown-class", context + " references unknown class '" + name + "'");
}

}  // namespace

DerivedOntology derive_lattices(const ObjectModel& om) {
  std::set<std::string> classes(om.classes.begin(), om.classes.end());
  for (const auto& [child, parent] : om.inheritance) {
    require_class(classes, child, "inheritance");
    require_class(classes, parent, "inheritance");
  }
  for (const auto& a : om.associations) {
    require_class(classes, a.source, "association '" + a.name + "'");
    require_class(classes, a.target, "association '" + a.name + "'");
  }
  for (const auto& a : om.attributes) require_class(classes, a.owner, "attribute '" + a.name + "'");
  for (const auto& m : om.methods) require_class(classes, m.owner, "method '" + m.name + "'");

  std::vector<ConceptDecl> concepts;
  std::set<std::string> declared{std::string(kUniversalType)};
  for (const auto& c : om.classes) {
    if (!declared.insert(c).second) continue;
    ConceptDecl d{c, {}, {}};
    for (const auto& [child, parent] : om.inheritance)
      if (child == c) d.parents.push_back(parent);
    concepts.push_back(std::move(d));
  }
  // Value classes of attributes are data types: plain concepts under the top.
  for (const auto& a : om.attributes)
    if (declared.insert(a.value_class).second) concepts.push_back({a.value_class, {}, {}});

  DerivedOntology out;
  out.ontology.concepts = ConceptLattice::build(concepts);

  std::vector<RelationDecl> relations;
  std::set<std::string> used;
  auto add_relation = [&](const std::string& name, std::vector<std::string> sig) {
    std::string actual = name;
    for (int suffix = 2; used.count(actual); ++suffix) actual = name + "_" + std::to_string(suffix);
    if (actual != name)
      out.collisions.push_back("relation '" + name + "' (" + sig.front() + ") renamed to '" +
                               actual + "'");
    used.insert(actual);
    relations.push_back({actual, std::move(sig), {}, {}});
  };
  for (const auto& a : om.associations) add_relation(a.name, {a.source, a.target});
  for (const auto& a : om.attributes) add_relation(a.name, {a.owner, a.value_class});
  for (const auto& m : om.methods) add_relation(m.name, {m.owner, std::string(kUniversalType)});

  out.ontology.relations = RelationLattice::build(relations, out.ontology.concepts);
  return out;
}

}  // namespace cgvv
