#include <sstream>

#include "cgvv/frontio.hpp"
#include "cgvv/frontio/syntax.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

namespace {

std::string marker_text(const Marker& m) {
  switch (m.kind) {
    case Marker::Kind::Generic:
      return "*";
    case Marker::Kind::Coref:
      return "*" + m.name;
    case Marker::Kind::Individual:
      return quote_if_needed(m.name);
  }
  return "*";
}

// A name that the parser resolves back to `id`: coreference variables win
// over individual names, and the first match wins. Otherwise `@position`.
std::string ref_for(const ConceptualGraph& g, NodeId id) {
  const auto nodes = g.concepts();
  const ConceptNode& n = g.concept_at(id);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) pos = i + 1;
  if (n.marker.kind == Marker::Kind::Generic) return "@" + std::to_string(pos);
  for (const auto& c : nodes) {
    if (c.marker.is_coref() && c.marker.name == n.marker.name)
      return c.id == id ? n.marker.name : "@" + std::to_string(pos);
  }
  for (const auto& c : nodes) {
    if (c.marker.is_individual() && c.marker.name == n.marker.name)
      return c.id == id ? quote_if_needed(n.marker.name) : "@" + std::to_string(pos);
  }
  return "@" + std::to_string(pos);
}

std::string block(const ConceptualGraph& g, const std::string& indent) {
  if (g.empty()) return "{ }";
  return "{\n" + serialize_body(g, indent + "  ") + indent + "}";
}

// The parser derives frontiers from shared coreference variables, so only
// frontiers of that exact shape survive a round trip.
void check_frontier(const std::string& what, const ConceptualGraph& left,
                    const ConceptualGraph& right, const Frontier& frontier) {
  Frontier expected;
  for (const auto& x : left.concepts())
    if (x.marker.is_coref())
      for (const auto& y : right.concepts())
        if (y.marker == x.marker) expected.emplace_back(x.id, y.id);
  Frontier got = frontier;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  if (got != expected)
    throw Error("unserializable",
                what + ": frontier is not exactly the set of shared coreference variables");
}

std::string fact_list(const std::vector<std::string>& facts, const ExprPtr& theta) {
  std::string out = "{";
  for (std::size_t i = 0; i < facts.size(); ++i) out += (i ? ", " : " ") + facts[i];
  if (theta) out += " where " + to_string(*theta);
  return out + " }";
}

std::string kind_text(const CausalRelation& r) {
  if (r.kind == RelationKind::Influence)
    return r.sense == Sense::Beneficial ? "influence(+)" : "influence(-)";
  return std::string(to_string(r.kind));
}

std::string property_tail(const Property& p, const std::string& indent) {
  std::ostringstream os;
  os << "degree " << p.degree.level;
  if (!p.degree.tag.empty()) os << " (" << p.degree.tag << ")";
  os << " kind " << kind_text(p.relation) << " {\n";
  os << indent << "  causes " << fact_list(p.causes, p.relation.theta_c) << '\n';
  os << indent << "  effects " << fact_list(p.effects, p.relation.theta_e) << '\n';
  for (const auto& b : p.bindings)
    os << indent << "  bind " << b.fact << " to graph " << block(b.pattern, indent + "  ") << '\n';
  if (!p.relation.d.empty()) os << indent << "  note " << quote(p.relation.d) << '\n';
  os << indent << "}";
  return os.str();
}

}  // namespace

std::string serialize_body(const ConceptualGraph& g, const std::string& indent) {
  std::ostringstream os;
  for (const auto& c : g.concepts())
    os << indent << '[' << c.type << ": " << marker_text(c.marker) << "]\n";
  for (const auto& e : g.relations()) {
    os << indent << '(' << e.type;
    for (NodeId a : e.args) os << ' ' << ref_for(g, a);
    os << ")\n";
  }
  return os.str();
}

std::string serialize_graph(const std::string& name, const ConceptualGraph& g) {
  return "graph " + name + " " + block(g, "") + "\n";
}

std::string serialize(const GraphRule& r) {
  check_frontier("rule '" + r.name + "'", r.hypothesis, r.conclusion, r.frontier);
  return "rule " + r.name + " {\n  if " + block(r.hypothesis, "  ") + "\n  then " +
         block(r.conclusion, "  ") + "\n}\n";
}

std::string serialize(const Constraint& c) {
  if (const auto* pc = std::get_if<PositiveConstraint>(&c)) {
    std::string out = "positive " + pc->name + " {\n  when " + block(pc->condition, "  ") +
                      "\n  require ";
    for (std::size_t i = 0; i < pc->alternatives.size(); ++i) {
      const auto& alt = pc->alternatives[i];
      check_frontier("constraint '" + pc->name + "'", pc->condition, alt.graph, alt.frontier);
      if (i) out += "\n  or ";
      out += block(alt.graph, "  ");
    }
    return out + "\n}\n";
  }
  const auto& nc = std::get<NegativeConstraint>(c);
  check_frontier("constraint '" + nc.name + "'", nc.condition, nc.mandatory, nc.frontier);
  return "negative " + nc.name + " {\n  when " + block(nc.condition, "  ") + "\n  forbid " +
         block(nc.mandatory, "  ") + "\n}\n";
}

std::string serialize(const Property& p) {
  return "property " + p.name + " " + property_tail(p, "") + "\n";
}

std::string serialize(const GenericProperty& gp) {
  std::ostringstream os;
  os << "generic " << gp.name;
  for (std::size_t i = 0; i < gp.perspectives.size(); ++i)
    os << (i ? ", " : " perspective ") << gp.perspectives[i];
  os << " typology " << to_string(gp.typology) << " {\n";
  for (const auto& ph : gp.placeholders) os << "  param " << ph.name << ": " << ph.type << ";\n";
  os << "  " << property_tail(gp.body, "  ") << "\n}\n";
  return os.str();
}

std::string serialize(const PlacementDecl& p) {
  return "place " + p.property + " at " + to_string(p.coords) + ";\n";
}

std::string serialize(const Granularity& g) {
  std::string out = "granularity " + g.name + " {";
  for (std::size_t i = 0; i < g.degrees.size(); ++i) {
    out += (i ? ", " : " ") + g.degrees[i].name;
    if (!g.degrees[i].temporal.empty()) out += " (" + quote_if_needed(g.degrees[i].temporal) + ")";
  }
  return out + " }\n";
}

std::string serialize(const FactStore& store) {
  std::ostringstream os;
  for (const auto& f : store.facts()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ModelingVariable>) {
            os << frontio::render_variable(x, x.name);
          } else if constexpr (std::is_same_v<T, ModelingParameter>) {
            os << "param " << x.name << ": " << x.type << " = " << to_string(x.value);
          } else if constexpr (std::is_same_v<T, HandleFunction>) {
            os << "function " << x.name << '(';
            for (std::size_t i = 0; i < x.parameters.size(); ++i)
              os << (i ? ", " : "") << x.parameters[i];
            os << "): " << x.result;
          } else {
            os << "trusted " << x.name;
          }
        },
        f);
    os << ";\n";
  }
  return os.str();
}

}  // namespace cgvv
