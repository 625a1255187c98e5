#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cgvv/frontio/syntax.hpp"
#include "cgvv/ingest.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

namespace {

constexpr std::pair<EntityKind, std::string_view> kKinds[] = {
    {EntityKind::Process, "process"}, {EntityKind::Activity, "activity"},
    {EntityKind::Resource, "resource"}, {EntityKind::Actor, "actor"},
    {EntityKind::Flow, "flow"},         {EntityKind::Location, "location"},
};

// Link kind -> (source kinds, target kinds).
struct LinkShape {
  std::string_view name;
  std::vector<EntityKind> sources;
  std::vector<EntityKind> targets;
};

const std::vector<LinkShape>& link_shapes() {
  using K = EntityKind;
  static const std::vector<LinkShape> shapes = {
      {"composed_of", {K::Process}, {K::Process, K::Activity}},
      {"has_input", {K::Activity}, {K::Flow}},
      {"has_output", {K::Activity}, {K::Flow}},
      {"uses_resource", {K::Activity}, {K::Resource}},
      {"performed_by", {K::Activity}, {K::Actor}},
      {"precedes", {K::Activity}, {K::Activity}},
      {"located_at", {K::Resource}, {K::Location}},
  };
  return shapes;
}

const char* kDomains[] = {"Material", "Energy", "Information"};

std::string kind_type(EntityKind k) {
  switch (k) {
    case EntityKind::Process:
      return "Process";
    case EntityKind::Activity:
      return "Activity";
    case EntityKind::Resource:
      return "Resource";
    case EntityKind::Actor:
      return "Actor";
    case EntityKind::Flow:
      return "Flow";
    case EntityKind::Location:
      return "Location";
  }
  return "";
}

std::string value_individual(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Symbol:
      return v.symbol;
    case Value::Kind::Set: {
      std::string out;
      for (const auto& s : v.set) out += (out.empty() ? "" : ",") + s;
      return "{" + out + "}";
    }
    default:
      return to_string(v);
  }
}

}  // namespace

std::string_view to_string(EntityKind k) {
  for (const auto& [kind, name] : kKinds)
    if (kind == k) return name;
  return "?";
}

std::optional<EntityKind> entity_kind_from(std::string_view keyword) {
  for (const auto& [kind, name] : kKinds)
    if (name == keyword) return kind;
  return std::nullopt;
}

const Entity* EnterpriseModel::find(std::string_view id) const {
  for (const auto& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

void validate(const EnterpriseModel& m) {
  std::set<std::string> ids;
  for (const auto& e : m.entities) {
    if (!ids.insert(e.id).second)
      throw ModelError("duplicate-entity", "entity '" + e.id + "' declared twice");
    for (const auto& [k, v] : e.attributes) {
      if (k != kOperationalDomain) continue;
      if (e.kind != EntityKind::Flow)
        throw ModelError("kind-violation", "only flows carry an operational domain ('" + e.id + "')");
      const bool ok = v.kind == Value::Kind::Symbol &&
                      std::any_of(std::begin(kDomains), std::end(kDomains),
                                  [&](const char* d) { return v.symbol == d; });
      if (!ok)
        throw ModelError("invalid-domain", "flow '" + e.id + "' has operational domain " +
                                               to_string(v) +
                                               "; expected Material, Energy or Information");
    }
  }
  for (const auto& l : m.links) {
    auto shape = std::find_if(link_shapes().begin(), link_shapes().end(),
                              [&](const LinkShape& s) { return s.name == l.kind; });
    if (shape == link_shapes().end())
      throw ModelError("unknown-link", "unknown link kind '" + l.kind + "'");
    const Entity* src = m.find(l.source);
    const Entity* dst = m.find(l.target);
    if (!src || !dst)
      throw ModelError("dangling-link", l.kind + " link refers to undeclared entity '" +
                                            (src ? l.target : l.source) + "'");
    auto allowed = [](const std::vector<EntityKind>& ks, EntityKind k) {
      return std::find(ks.begin(), ks.end(), k) != ks.end();
    };
    if (!allowed(shape->sources, src->kind) || !allowed(shape->targets, dst->kind))
      throw ModelError("kind-violation", l.kind + " cannot link " + std::string(to_string(src->kind)) +
                                             " '" + src->id + "' to " +
                                             std::string(to_string(dst->kind)) + " '" + dst->id + "'");
  }
}

bool equivalent(const EnterpriseModel& a, const EnterpriseModel& b) {
  auto entity_key = [](const Entity& e) {
    return std::tie(e.id, e.kind, e.type, e.attributes, e.variables);
  };
  auto sorted_entities = [&](const EnterpriseModel& m) {
    std::vector<const Entity*> out;
    for (const auto& e : m.entities) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](const Entity* x, const Entity* y) { return x->id < y->id; });
    return out;
  };
  auto ea = sorted_entities(a), eb = sorted_entities(b);
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!(entity_key(*ea[i]) == entity_key(*eb[i]))) return false;
  auto la = a.links, lb = b.links;
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  return la == lb;
}

std::string render_model(const EnterpriseModel& m) {
  std::ostringstream os;
  for (const auto& e : m.entities) {
    os << to_string(e.kind) << ' ' << quote_if_needed(e.id);
    const Value* domain = nullptr;
    std::vector<const std::pair<std::string, Value>*> attrs;
    for (const auto& a : e.attributes) {
      if (e.kind == EntityKind::Flow && a.first == kOperationalDomain && !domain)
        domain = &a.second;
      else
        attrs.push_back(&a);
    }
    if (domain) os << ": " << to_string(*domain);
    else if (e.type != kind_type(e.kind)) os << ": " << e.type;
    if (attrs.empty() && e.variables.empty()) {
      os << ";\n";
      continue;
    }
    os << " {\n";
    for (const auto* a : attrs) os << "  attr " << a->first << " = " << to_string(a->second) << ";\n";
    for (const auto& v : e.variables) os << "  " << frontio::render_variable(v, v.name) << ";\n";
    os << "}\n";
  }
  for (const auto& l : m.links)
    os << quote_if_needed(l.source) << ' ' << l.kind << ' ' << quote_if_needed(l.target) << ";\n";
  return os.str();
}

ConceptualGraph model_to_cg(const EnterpriseModel& m, const OntologyPtr& onto) {
  validate(m);
  const auto& clat = onto->concepts;
  const auto& rlat = onto->relations;
  ConceptualGraph g(onto);
  std::map<std::string, NodeId> node_of;
  for (const auto& e : m.entities) {
    const std::string base = kind_type(e.kind);
    for (const auto& t : {base, e.type})
      if (!clat.contains(t))
        throw ModelError("missing-counterpart", "the ontology has no concept type '" + t + "'");
    if (!clat.is_subtype(e.type, base))
      throw ModelError("kind-violation", "'" + e.id + "' is declared as " + e.type +
                                             ", which is not a kind of " + base);
    node_of[e.id] = g.add_concept(e.type, Marker::individual(e.id));
  }
  auto need_relation = [&](const std::string& r) {
    if (!rlat.contains(r))
      throw ModelError("missing-counterpart", "the ontology has no relation '" + r + "'");
  };
  for (const auto& l : m.links) {
    need_relation(l.kind);
    g.add_relation(l.kind, {node_of.at(l.source), node_of.at(l.target)});
  }
  std::map<std::pair<std::string, std::string>, NodeId> value_nodes;
  for (const auto& e : m.entities) {
    for (const auto& [attr, value] : e.attributes) {
      need_relation(attr);
      const auto& sig = rlat.signature(attr);
      if (sig.size() != 2)
        throw ModelError("missing-counterpart", "attribute relation '" + attr + "' is not binary");
      const std::string individual = value_individual(value);
      auto key = std::make_pair(sig[1], individual);
      auto it = value_nodes.find(key);
      if (it == value_nodes.end())
        it = value_nodes.emplace(key, g.add_concept(sig[1], Marker::individual(individual))).first;
      g.add_relation(attr, {node_of.at(e.id), it->second});
    }
  }
  return g;
}

}  // namespace cgvv
