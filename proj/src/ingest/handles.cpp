#include <algorithm>
#include <memory>

#include "cgvv/ingest.hpp"

namespace cgvv {

namespace {

const Entity& entity_arg(const EnterpriseModel& m, std::span<const Value> args, std::size_t i,
                         EntityKind kind, const char* fn) {
  const Value& v = args[i];
  if (v.kind != Value::Kind::Symbol)
    throw PropertyError("type-mismatch", std::string(fn) + " expects an entity name, got a " +
                                             std::string(kind_name(v.kind)));
  const Entity* e = m.find(v.symbol);
  if (!e || e->kind != kind)
    throw PropertyError("type-mismatch", std::string(fn) + ": '" + v.symbol + "' is not a " +
                                             std::string(to_string(kind)));
  return *e;
}

std::vector<std::string> targets(const EnterpriseModel& m, const std::string& src,
                                 std::string_view kind) {
  std::vector<std::string> out;
  for (const auto& l : m.links)
    if (l.kind == kind && l.source == src) out.push_back(l.target);
  return out;
}

HandleSpec set_of_links(const char* name, EntityKind from, const char* param, const char* link) {
  return {{name, {param}, "set"},
          [=](const EnterpriseModel& m, std::span<const Value> args, std::optional<TimePoint>) {
            const Entity& e = entity_arg(m, args, 0, from, name);
            return Value::of_set(targets(m, e.id, link));
          }};
}

}  // namespace

HandleFunctionRegistry HandleFunctionRegistry::builtins() {
  HandleFunctionRegistry r;
  r.add(set_of_links("inputs", EntityKind::Activity, "Activity", "has_input"));
  r.add(set_of_links("outputs", EntityKind::Activity, "Activity", "has_output"));
  r.add(set_of_links("resource_of", EntityKind::Activity, "Activity", "uses_resource"));
  r.add({{"domain_of", {"Flow"}, "OperationalDomain"},
         [](const EnterpriseModel& m, std::span<const Value> args, std::optional<TimePoint>) {
           const Entity& f = entity_arg(m, args, 0, EntityKind::Flow, "domain_of");
           for (const auto& [k, v] : f.attributes)
             if (k == kOperationalDomain) return v;
           throw PropertyError("unknown-fact", "flow '" + f.id + "' has no operational domain");
         }});
  r.add({{"precedes", {"Activity", "Activity"}, "bool"},
         [](const EnterpriseModel& m, std::span<const Value> args, std::optional<TimePoint>) {
           const Entity& a = entity_arg(m, args, 0, EntityKind::Activity, "precedes");
           const Entity& b = entity_arg(m, args, 1, EntityKind::Activity, "precedes");
           auto next = targets(m, a.id, "precedes");
           return Value::of_bool(std::find(next.begin(), next.end(), b.id) != next.end());
         }});
  r.add({{"colocated", {"Resource", "Resource"}, "bool"},
         [](const EnterpriseModel& m, std::span<const Value> args, std::optional<TimePoint>) {
           const Entity& a = entity_arg(m, args, 0, EntityKind::Resource, "colocated");
           const Entity& b = entity_arg(m, args, 1, EntityKind::Resource, "colocated");
           auto la = targets(m, a.id, "located_at");
           auto lb = targets(m, b.id, "located_at");
           bool shared = std::any_of(la.begin(), la.end(), [&](const std::string& l) {
             return std::find(lb.begin(), lb.end(), l) != lb.end();
           });
           return Value::of_bool(shared);
         }});
  return r;
}

void HandleFunctionRegistry::add(HandleSpec spec) {
  if (find(spec.signature.name))
    throw ModelError("duplicate-function",
                     "handle function '" + spec.signature.name + "' registered twice");
  specs_.push_back(std::move(spec));
}

const HandleSpec* HandleFunctionRegistry::find(std::string_view name) const {
  for (const auto& s : specs_)
    if (s.signature.name == name) return &s;
  return nullptr;
}

FactStore extract_facts(const EnterpriseModel& m, const HandleFunctionRegistry& registry) {
  FactStore store;
  for (const auto& e : m.entities) {
    store.add_symbol(e.id);
    for (const auto& [k, v] : e.attributes) {
      if (k == kOperationalDomain)
        store.add(ModelingParameter{"domain_of." + e.id, "OperationalDomain", v});
      else
        store.add(ModelingParameter{k + "." + e.id, std::string(kind_name(v.kind)), v});
    }
    for (auto v : e.variables) {
      v.name += "." + e.id;
      store.add(std::move(v));
    }
  }
  for (const char* d : {"Material", "Energy", "Information"}) store.add_symbol(d);
  for (const auto& spec : registry.specs()) store.add(spec.signature);

  auto model = std::make_shared<const EnterpriseModel>(m);
  auto reg = std::make_shared<const HandleFunctionRegistry>(registry);
  store.set_evaluator([model, reg](const std::string& name, std::span<const Value> args,
                                   std::optional<TimePoint> t) {
    const HandleSpec* spec = reg->find(name);
    if (!spec) throw PropertyError("unknown-function", "no handle function '" + name + "'");
    return spec->evaluate(*model, args, t);
  });
  return store;
}

}  // namespace cgvv
