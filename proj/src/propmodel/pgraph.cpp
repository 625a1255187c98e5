#include <algorithm>

#include "cgvv/property.hpp"

namespace cgvv {

std::string_view to_string(Target t) {
  switch (t) {
    case Target::UpperReferent:
      return "upper_referent";
    case Target::Referent:
      return "referent";
    case Target::Lower:
      return "lower";
  }
  return "?";
}

std::string_view to_string(Scope s) { return s == Scope::System ? "system" : "model"; }

std::string_view to_string(Aspect a) {
  switch (a) {
    case Aspect::Structural:
      return "structural";
    case Aspect::Behavioral:
      return "behavioral";
    case Aspect::Functional:
      return "functional";
  }
  return "?";
}

std::string_view to_string(Epoch e) {
  switch (e) {
    case Epoch::Past:
      return "past";
    case Epoch::Present:
      return "present";
    case Epoch::Future:
      return "future";
  }
  return "?";
}

std::string to_string(const Coordinates& c) {
  return std::string(to_string(c.target)) + " " + std::string(to_string(c.scope)) + "." +
         std::string(to_string(c.aspect)) + " " + std::string(to_string(c.time));
}

std::size_t PropertyGraph::node_for(std::vector<std::string> facts) {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].facts == facts) return i;
  nodes_.push_back({std::move(facts)});
  return nodes_.size() - 1;
}

void PropertyGraph::place(Property p, Coordinates coords) {
  validate(p);
  for (const auto& existing : placements_)
    if (existing.property.name == p.name)
      throw PropertyError("duplicate-property", "property " + p.name + " is already placed");
  const std::size_t from = node_for(p.causes);
  const std::size_t to = node_for(p.effects);
  arcs_.push_back({from, to, p.relation.kind, p.name});
  placements_.push_back({std::move(p), coords});
}

PropertyGraph place(PropertyGraph pg, Property p, Coordinates coords) {
  pg.place(std::move(p), coords);
  return pg;
}

PropertyReport check_property_graph(const PropertyGraph& pg, const VerificationContext& ctx) {
  std::vector<std::string> trusted;
  if (ctx.store)
    for (const auto& f : ctx.store->facts())
      if (const auto* ref = std::get_if<PropertyRef>(&f)) trusted.push_back(ref->name);

  auto resolvable = [&](const Property& p, const std::string& fact) {
    return p.pattern_for(fact) || (ctx.store && ctx.store->find(fact));
  };

  PropertyReport report;
  for (const auto& placement : pg.placements()) {
    const Property& p = placement.property;
    for (const auto* list : {&p.causes, &p.effects})
      for (const auto& f : *list)
        if (!resolvable(p, f))
          throw PropertyError("unresolved-fact", "property " + p.name + " refers to '" + f +
                                                     "', which is neither a fact nor bound");
    PropertyResult r{p.name, placement.coords, {}};
    if (std::find(trusted.begin(), trusted.end(), p.name) != trusted.end())
      r.verdict.notes.push_back("trusted; not re-proved");
    else
      r.verdict = verify_property(p, ctx);
    if (r.verdict.status == Status::Violated) report.overall = Status::Violated;
    report.entries.push_back(std::move(r));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const PropertyResult& a, const PropertyResult& b) { return a.coords < b.coords; });
  return report;
}

}  // namespace cgvv
