#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cgvv/fol.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

Formula phi_translate(const ConceptualGraph& input) {
  const ConceptualGraph g = normalize_coref(input);
  std::set<std::string> constants;
  for (const auto& c : g.concepts())
    if (c.marker.is_individual()) constants.insert(c.marker.name);

  Formula f;
  std::map<NodeId, Term> terms;
  std::size_t k = 0;
  for (const auto& c : g.concepts()) {
    if (c.marker.is_individual()) {
      terms[c.id] = Term{false, c.marker.name};
      continue;
    }
    std::string v;
    do v = "x" + std::to_string(++k);
    while (constants.count(v));
    f.variables.push_back(v);
    terms[c.id] = Term{true, v};
  }
  for (const auto& c : g.concepts()) f.atoms.push_back({c.type, {terms.at(c.id)}, false});
  for (const auto& r : g.relations()) {
    Atom a{r.type, {}, true};
    for (NodeId n : r.args) a.terms.push_back(terms.at(n));
    f.atoms.push_back(std::move(a));
  }
  return f;
}

std::string render(const Formula& f) {
  if (f.atoms.empty() && f.variables.empty()) return "true";
  std::ostringstream os;
  if (!f.variables.empty()) {
    os << "exists ";
    for (std::size_t i = 0; i < f.variables.size(); ++i) os << (i ? ", " : "") << f.variables[i];
    os << ". ";
  }
  if (f.atoms.empty()) os << "true";
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    const Atom& a = f.atoms[i];
    if (i) os << " & ";
    os << quote_if_needed(a.predicate) << '(';
    for (std::size_t j = 0; j < a.terms.size(); ++j)
      os << (j ? ", " : "")
         << (a.terms[j].variable ? a.terms[j].name : quote_if_needed(a.terms[j].name));
    os << ')';
  }
  return os.str();
}

bool holds_in_canonical_model(const Formula& model, const Formula& query, const Ontology& onto) {
  // Domain elements are the model's terms; a query constant denotes the
  // model constant of the same name.
  std::vector<Term> domain;
  for (const auto& a : model.atoms)
    for (const auto& t : a.terms)
      if (std::find(domain.begin(), domain.end(), t) == domain.end()) domain.push_back(t);

  auto leq = [&](const Atom& fact, const Atom& goal) {
    if (fact.relation != goal.relation) return false;
    if (fact.predicate == goal.predicate) return true;
    if (fact.relation) {
      const auto& lat = onto.relations;
      return lat.contains(fact.predicate) && lat.contains(goal.predicate) &&
             lat.is_subtype(fact.predicate, goal.predicate);
    }
    const auto& lat = onto.concepts;
    return lat.contains(fact.predicate) && lat.contains(goal.predicate) &&
           lat.is_subtype(fact.predicate, goal.predicate);
  };

  std::map<std::string, Term> assignment;
  auto resolve = [&](const Term& t) { return t.variable ? assignment.at(t.name) : t; };
  auto atom_holds = [&](const Atom& goal) {
    for (const auto& fact : model.atoms) {
      if (fact.terms.size() != goal.terms.size() || !leq(fact, goal)) continue;
      bool same = true;
      for (std::size_t i = 0; i < goal.terms.size() && same; ++i)
        same = fact.terms[i] == resolve(goal.terms[i]);
      if (same) return true;
    }
    return false;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == query.variables.size()) {
      for (const auto& a : query.atoms)
        if (!atom_holds(a)) return false;
      return true;
    }
    for (const auto& d : domain) {
      assignment[query.variables[i]] = d;
      if (search(i + 1)) return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace cgvv
