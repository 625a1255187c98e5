#include <algorithm>
#include <set>

#include "cgvv/property.hpp"

namespace cgvv {

std::string_view to_string(Typology t) {
  switch (t) {
    case Typology::System:
      return "system";
    case Typology::ModelingLanguage:
      return "language";
    case Typology::Axiomatic:
      return "axiomatic";
  }
  return "?";
}

namespace {

bool is_placeholder(std::string_view s) { return !s.empty() && s.front() == '$'; }

void collect(const Expr& e, std::set<std::string>& out) {
  if ((e.kind == Expr::Kind::Name || e.kind == Expr::Kind::Call) && is_placeholder(e.name))
    out.insert(e.name);
  for (const auto& a : e.args) collect(*a, out);
}

std::set<std::string> placeholders_in(const Property& p) {
  std::set<std::string> out;
  auto add = [&](const std::string& s) {
    if (is_placeholder(s)) out.insert(s);
  };
  add(p.name);
  for (const auto& f : p.causes) add(f);
  for (const auto& f : p.effects) add(f);
  if (p.relation.theta_c) collect(*p.relation.theta_c, out);
  if (p.relation.theta_e) collect(*p.relation.theta_e, out);
  for (const auto& b : p.bindings) {
    add(b.fact);
    for (const auto& c : b.pattern.concepts()) {
      add(c.type);
      if (c.marker.is_individual()) add(c.marker.name);
    }
  }
  return out;
}

using Substitution = std::map<std::string, std::string>;

std::string subst(const std::string& s, const Substitution& sub) {
  auto it = sub.find(s);
  return it == sub.end() ? s : it->second;
}

ExprPtr subst(const ExprPtr& e, const Substitution& sub) {
  if (!e) return e;
  Expr copy = *e;
  if (copy.kind == Expr::Kind::Name || copy.kind == Expr::Kind::Call) copy.name = subst(copy.name, sub);
  for (auto& a : copy.args) a = subst(a, sub);
  return std::make_shared<const Expr>(std::move(copy));
}

ConceptualGraph subst(const ConceptualGraph& g, const Substitution& sub) {
  ConceptualGraph out(g.ontology());
  for (auto c : g.concepts()) {
    c.type = subst(c.type, sub);
    if (c.marker.is_individual()) c.marker.name = subst(c.marker.name, sub);
    out.insert_concept(std::move(c));
  }
  for (const auto& r : g.relations()) out.insert_relation(r);
  return out;
}

}  // namespace

void validate(const GenericProperty& gp) {
  static const std::set<std::string> kPerspectives = {"stability", "reliability", "integrity"};
  for (const auto& p : gp.perspectives)
    if (!kPerspectives.count(p))
      throw PropertyError("unknown-perspective", "generic property " + gp.name +
                                                     ": unknown perspective '" + p + "'");
  std::set<std::string> declared;
  for (const auto& ph : gp.placeholders) {
    if (!is_placeholder(ph.name))
      throw PropertyError("invalid-placeholder", "placeholder '" + ph.name + "' must start with '$'");
    if (ph.type.empty())
      throw PropertyError("invalid-placeholder", "placeholder " + ph.name + " has no type");
    if (!declared.insert(ph.name).second)
      throw PropertyError("invalid-placeholder", "placeholder " + ph.name + " declared twice");
  }
  for (const auto& used : placeholders_in(gp.body))
    if (!declared.count(used))
      throw PropertyError("undeclared-placeholder", "generic property " + gp.name + " uses " +
                                                        used + " without declaring it");
  if (gp.body.effects.empty())
    throw PropertyError("no-effects", "generic property " + gp.name + " has no effect");
}

Property instantiate(const GenericProperty& gp, const PlaceholderBindings& bindings,
                     const TypeOracle& type_of, const ConceptLattice& lattice) {
  validate(gp);
  // Shape of the bindings first, then the types of the bound values.
  std::vector<std::pair<const Placeholder*, std::string>> bound;
  std::set<std::string> used;
  for (const auto& ph : gp.placeholders) {
    auto it = bindings.find(ph.name);
    if (it == bindings.end()) it = bindings.find(ph.name.substr(1));
    if (it == bindings.end())
      throw PropertyError("missing-binding", "no value bound to " + ph.name + " in " + gp.name);
    used.insert(it->first);
    bound.emplace_back(&ph, it->second);
  }
  for (const auto& [key, value] : bindings)
    if (!used.count(key))
      throw PropertyError("unknown-placeholder",
                          gp.name + " has no placeholder named '" + key + "'");

  Substitution sub;
  for (const auto& [ph, raw] : bound) {
    std::string value = raw;
    std::optional<std::string> type;
    if (auto colon = value.rfind(':'); colon != std::string::npos) {
      type = value.substr(colon + 1);
      value = value.substr(0, colon);
    } else if (type_of) {
      type = type_of(value);
    }
    if (value.empty())
      throw PropertyError("missing-binding", "empty value bound to " + ph->name);
    // Anything conforms to the top type, typed or not.
    if (!type && ph->type == "Universal") type = ph->type;
    if (!type)
      throw PropertyError("type-violation", "cannot determine the type of '" + value +
                                                "' bound to " + ph->name);
    if (!lattice.contains(*type) || !lattice.contains(ph->type) ||
        !lattice.is_subtype(*type, ph->type))
      throw PropertyError("type-violation", "'" + value + "' is a " + *type + ", but " +
                                                ph->name + " expects a " + ph->type);
    sub[ph->name] = value;
  }

  Property p = gp.body;
  p.name = subst(p.name, sub);
  for (auto& f : p.causes) f = subst(f, sub);
  for (auto& f : p.effects) f = subst(f, sub);
  p.relation.theta_c = subst(p.relation.theta_c, sub);
  p.relation.theta_e = subst(p.relation.theta_e, sub);
  for (auto& b : p.bindings) {
    b.fact = subst(b.fact, sub);
    b.pattern = subst(b.pattern, sub);
  }
  validate(p);
  return p;
}

std::vector<const GenericProperty*> filter_matrix(std::span<const GenericProperty> matrix,
                                                  std::optional<std::string> perspective,
                                                  std::optional<Typology> typology) {
  std::vector<const GenericProperty*> out;
  for (const auto& gp : matrix) {
    if (perspective && std::find(gp.perspectives.begin(), gp.perspectives.end(), *perspective) ==
                           gp.perspectives.end())
      continue;
    if (typology && gp.typology != *typology) continue;
    out.push_back(&gp);
  }
  return out;
}

}  // namespace cgvv
