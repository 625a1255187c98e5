#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#ifndef CGVV_SOURCE_DIR
#error "CGVV_SOURCE_DIR must point at the repository root"
#endif

namespace cgvv::testing {

std::string data_path(const std::string& name) { return std::string(CGVV_SOURCE_DIR) + "/data/" + name; }
std::string fixture_path(const std::string& name) { return data_path("fixtures/" + name); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Bundle load_fixtures(const std::vector<std::string>& names) {
  std::vector<std::string> paths;
  for (const auto& n : names) paths.push_back(fixture_path(n));
  return parse_bundle(std::span<const std::string>(paths));
}

// ---------------------------------------------------------------------------

namespace {

template <class Parents>
Closure close(const std::vector<std::string>& names, Parents parents) {
  Closure c;
  c.names = names;
  const std::size_t n = names.size();
  c.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    c.leq[i][i] = true;
    for (const auto& p : parents(names[i])) c.leq[i][c.index(p)] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (c.leq[i][k] && c.leq[k][j]) c.leq[i][j] = true;
  return c;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

std::size_t Closure::index(const std::string& n) const {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw std::runtime_error("closure: unknown name " + n);
  return static_cast<std::size_t>(it - names.begin());
}

bool Closure::below(const std::string& a, const std::string& b) const { return leq[index(a)][index(b)]; }

Closure closure_of(const ConceptLattice& lat) {
  return close(lat.types(), [&](const std::string& t) { return lat.parents(t); });
}

Closure closure_of(const RelationLattice& lat) {
  return close(lat.relations(), [&](const std::string& r) { return lat.parents(r); });
}

std::set<std::string> max_common_subtypes_oracle(const Closure& c, const std::string& a,
                                                 const std::string& b) {
  std::vector<std::string> common;
  for (const auto& t : c.names)
    if (c.below(t, a) && c.below(t, b)) common.push_back(t);
  std::set<std::string> out;
  for (const auto& t : common) {
    bool maximal = true;
    for (const auto& u : common)
      if (u != t && c.below(t, u)) maximal = false;
    if (maximal) out.insert(t);
  }
  return out;
}

std::set<Morphism> brute_force_projections(const ConceptualGraph& pattern,
                                           const ConceptualGraph& target) {
  const Closure cc = closure_of(pattern.lattices().concepts);
  const Closure rc = closure_of(pattern.lattices().relations);
  const auto pn = pattern.concepts();
  const auto tn = target.concepts();
  const auto pe = pattern.relations();
  const auto te = target.relations();
  std::set<Morphism> out;
  if (!pn.empty() && tn.empty()) return out;

  auto node_ok = [&](const ConceptNode& p, const ConceptNode& t) {
    if (!cc.below(t.type, p.type)) return false;
    if (p.marker.kind == Marker::Kind::Individual)
      return t.marker.kind == Marker::Kind::Individual && t.marker.name == p.marker.name;
    return true;
  };

  std::vector<std::size_t> choice(pn.size(), 0);
  while (true) {
    bool ok = true;
    std::map<NodeId, NodeId> nodes;
    for (std::size_t i = 0; i < pn.size() && ok; ++i) {
      ok = node_ok(pn[i], tn[choice[i]]);
      nodes[pn[i].id] = tn[choice[i]].id;
    }
    if (ok) {
      std::vector<std::vector<EdgeId>> images;
      for (const auto& e : pe) {
        std::vector<EdgeId> cands;
        for (const auto& f : te) {
          if (f.args.size() != e.args.size() || !rc.below(f.type, e.type)) continue;
          bool args = true;
          for (std::size_t k = 0; k < e.args.size(); ++k)
            if (nodes.at(e.args[k]) != f.args[k]) args = false;
          if (args) cands.push_back(f.id);
        }
        images.push_back(std::move(cands));
      }
      // Every combination of edge images.
      std::function<void(std::size_t, Morphism&)> expand = [&](std::size_t k, Morphism& m) {
        if (k == pe.size()) {
          out.insert(m);
          return;
        }
        for (EdgeId f : images[k]) {
          m.relation_map[pe[k].id] = f;
          expand(k + 1, m);
        }
        m.relation_map.erase(pe[k].id);
      };
      Morphism m;
      m.concept_map = nodes;
      expand(0, m);
    }
    // Next assignment (odometer).
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == tn.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

bool finite_model_entails(const ConceptualGraph& target, const ConceptualGraph& query) {
  const Closure cc = closure_of(target.lattices().concepts);
  const Closure rc = closure_of(target.lattices().relations);
  // Domain elements: one per individual name, one per other node.
  std::map<NodeId, std::string> elem;
  std::set<std::string> domain;
  for (const auto& c : target.concepts()) {
    elem[c.id] = c.marker.is_individual() ? "i:" + c.marker.name : "n:" + std::to_string(c.id.value);
    domain.insert(elem[c.id]);
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> facts;
  for (const auto& c : target.concepts()) facts.push_back({c.type, {elem[c.id]}});
  std::vector<std::pair<std::string, std::vector<std::string>>> rel_facts;
  for (const auto& e : target.relations()) {
    std::vector<std::string> args;
    for (NodeId a : e.args) args.push_back(elem[a]);
    rel_facts.push_back({e.type, args});
  }

  // Query terms: individuals are constants, the rest variables (a shared
  // coreference variable is one variable).
  std::vector<std::string> vars;
  std::map<NodeId, std::string> term;
  for (const auto& c : query.concepts()) {
    if (c.marker.is_individual()) {
      term[c.id] = "i:" + c.marker.name;
    } else {
      std::string v = c.marker.is_coref() ? "v:" + c.marker.name : "v#" + std::to_string(c.id.value);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      term[c.id] = v;
    }
  }
  const std::vector<std::string> elems(domain.begin(), domain.end());
  std::map<std::string, std::string> assign;

  auto value = [&](const std::string& t) { return t.rfind("v", 0) == 0 ? assign.at(t) : t; };
  auto satisfied = [&] {
    for (const auto& c : query.concepts()) {
      const std::string e = value(term[c.id]);
      bool found = false;
      for (const auto& [type, args] : facts)
        if (args[0] == e && cc.below(type, c.type)) found = true;
      if (!found) return false;
    }
    for (const auto& q : query.relations()) {
      std::vector<std::string> args;
      for (NodeId a : q.args) args.push_back(value(term[a]));
      bool found = false;
      for (const auto& [type, fargs] : rel_facts)
        if (fargs == args && rc.below(type, q.type)) found = true;
      if (!found) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (k == vars.size()) return satisfied();
    for (const auto& e : elems) {
      assign[vars[k]] = e;
      if (search(k + 1)) return true;
    }
    return false;
  };
  if (!vars.empty() && elems.empty()) return false;
  return search(0);
}

// ---------------------------------------------------------------------------

OntologyPtr random_ontology(Rng& rng, std::size_t types, std::size_t relations) {
  std::vector<ConceptDecl> cds{{"Universal", {}, {}}};
  for (std::size_t i = 1; i <= types; ++i) {
    ConceptDecl d{"T" + std::to_string(i), {}, {}};
    const std::size_t k = i == 1 ? 0 : uniform(rng, 0, 2);
    for (std::size_t j = 0; j < k; ++j) {
      std::string p = "T" + std::to_string(uniform(rng, 1, i - 1));
      if (std::find(d.parents.begin(), d.parents.end(), p) == d.parents.end()) d.parents.push_back(p);
    }
    cds.push_back(std::move(d));
  }
  ConceptLattice concepts = ConceptLattice::build(cds);
  const auto& all = concepts.types();

  std::vector<RelationDecl> rds;
  for (std::size_t i = 1; i <= relations; ++i) {
    RelationDecl d{"r" + std::to_string(i), {}, {}, {}};
    if (!rds.empty() && chance(rng, 0.35)) {
      const RelationDecl& parent = pick(rng, rds);
      d.parents.push_back(parent.name);
      for (const auto& t : parent.signature) {
        std::vector<std::string> below;
        for (const auto& u : all)
          if (concepts.is_subtype(u, t)) below.push_back(u);
        d.signature.push_back(pick(rng, below));
      }
    } else {
      const std::size_t arity = chance(rng, 0.7) ? 2 : uniform(rng, 1, 3);
      for (std::size_t k = 0; k < arity; ++k) d.signature.push_back(pick(rng, all));
    }
    rds.push_back(std::move(d));
  }
  RelationLattice rels = RelationLattice::build(rds, concepts);
  return std::make_shared<const Ontology>(Ontology{std::move(concepts), std::move(rels)});
}

ConceptualGraph random_graph(const OntologyPtr& onto, Rng& rng, const GraphShape& shape) {
  static const std::vector<std::string> kPlain = {"a", "b", "c"};
  static const std::vector<std::string> kOdd = {"a", "b", "part 7", "42", "x", "it's", "-1"};
  static const std::vector<std::string> kVars = {"x", "y", "z", "w", "v"};
  ConceptualGraph g(onto);
  const auto& types = onto->concepts.types();
  const std::size_t n = uniform(rng, shape.min_nodes, shape.max_nodes);
  std::vector<std::string> vars = kVars;
  std::shuffle(vars.begin(), vars.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    Marker m;
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < shape.individual) {
      m = Marker::individual(pick(rng, shape.odd_names ? kOdd : kPlain));
    } else if (r < shape.individual + shape.coref && !vars.empty()) {
      m = Marker::coref(vars.back());
      vars.pop_back();
    }
    g.add_concept(pick(rng, types), std::move(m));
  }
  const auto& rels = onto->relations.relations();
  if (n == 0 || rels.empty()) return g;
  const std::size_t m = uniform(rng, 0, shape.max_edges);
  const auto nodes = std::vector<ConceptNode>(g.concepts().begin(), g.concepts().end());
  for (std::size_t i = 0; i < m; ++i) {
    const std::string& r = pick(rng, rels);
    std::vector<NodeId> args;
    for (const auto& t : onto->relations.signature(r)) {
      std::vector<NodeId> cands;
      for (const auto& c : nodes)
        if (!shape.well_typed || onto->concepts.is_subtype(c.type, t)) cands.push_back(c.id);
      if (cands.empty()) break;
      args.push_back(pick(rng, cands));
    }
    if (args.size() == onto->relations.arity(r)) g.add_relation(r, std::move(args));
  }
  return g;
}

ConceptualGraph random_generalisation(const ConceptualGraph& target, Rng& rng) {
  const Ontology& o = target.lattices();
  ConceptualGraph p(target.ontology());
  std::map<NodeId, NodeId> kept;
  for (const auto& c : target.concepts()) {
    if (!chance(rng, 0.7)) continue;
    std::string type = c.type;
    for (std::size_t steps = uniform(rng, 0, 2); steps > 0; --steps) {
      auto ps = o.concepts.parents(type);
      if (ps.empty()) break;
      type = pick(rng, ps);
    }
    Marker m;
    if (c.marker.is_individual() && chance(rng, 0.5)) m = c.marker;
    if (chance(rng, 0.05)) m = Marker::individual("zz");
    kept[c.id] = p.add_concept(type, m);
  }
  for (const auto& e : target.relations()) {
    bool all = std::all_of(e.args.begin(), e.args.end(), [&](NodeId a) { return kept.count(a); });
    if (!all || !chance(rng, 0.7)) continue;
    std::string type = e.type;
    if (chance(rng, 0.3)) {
      auto ps = o.relations.parents(type);
      if (!ps.empty()) type = pick(rng, ps);
    }
    std::vector<NodeId> args;
    for (NodeId a : e.args) args.push_back(kept[a]);
    p.add_relation(type, args);
  }
  // Occasionally an edge the target may not have.
  if (!kept.empty() && chance(rng, 0.2) && !o.relations.relations().empty()) {
    const std::string& r = pick(rng, o.relations.relations());
    std::vector<NodeId> ids;
    for (const auto& [from, to] : kept) ids.push_back(to);
    std::vector<NodeId> args;
    for (std::size_t k = 0; k < o.relations.arity(r); ++k) args.push_back(pick(rng, ids));
    p.add_relation(r, args);
  }
  return p;
}

ExprPtr random_expr(Rng& rng, const std::vector<std::string>& names, int depth) {
  auto leaf = [&]() -> ExprPtr {
    switch (uniform(rng, 0, names.empty() ? 2 : 4)) {
      case 0:
        return expr::literal(Value::of_number(static_cast<double>(uniform(rng, 0, 10)) - 5));
      case 1:
        return expr::literal(Value::of_bool(chance(rng, 0.5)));
      case 2:
        return expr::literal(Value::of_symbol(chance(rng, 0.5) ? "S1" : "odd sym"));
      default:
        return expr::name(pick(rng, names));
    }
  };
  if (depth <= 0) return leaf();
  switch (uniform(rng, 0, 9)) {
    case 0:
      return expr::negate(random_expr(rng, names, depth - 1));
    case 1:
      return expr::conj({random_expr(rng, names, depth - 1), random_expr(rng, names, depth - 1)});
    case 2:
      return expr::disj({random_expr(rng, names, depth - 1), random_expr(rng, names, depth - 1)});
    case 3: {
      static const std::vector<std::string> ops = {"=", "!=", "<", "<=", ">", ">="};
      return expr::compare(pick(rng, ops), random_expr(rng, names, depth - 1),
                           random_expr(rng, names, depth - 1));
    }
    case 4: {
      static const std::vector<std::string> ops = {"+", "-", "*", "/"};
      return expr::arith(pick(rng, ops), random_expr(rng, names, depth - 1),
                         random_expr(rng, names, depth - 1));
    }
    case 5:
      return expr::in(random_expr(rng, names, depth - 1),
                      expr::set({leaf(), leaf()}));
    case 6:
      return expr::call(chance(rng, 0.5) ? "f" : "g", {random_expr(rng, names, depth - 1)});
    default:
      return leaf();
  }
}

namespace {

Frontier shared_vars(const ConceptualGraph& a, const ConceptualGraph& b) {
  Frontier f;
  for (const auto& x : a.concepts())
    if (x.marker.is_coref())
      for (const auto& y : b.concepts())
        if (y.marker == x.marker) f.emplace_back(x.id, y.id);
  return f;
}

GraphShape corefs() {
  GraphShape s;
  s.max_nodes = 4;
  s.max_edges = 4;
  s.coref = 0.5;
  s.individual = 0.25;
  s.odd_names = true;
  return s;
}

}  // namespace

GraphRule random_rule(const OntologyPtr& onto, Rng& rng, const std::string& name) {
  GraphRule r{name, random_graph(onto, rng, corefs()), random_graph(onto, rng, corefs()), {}};
  r.frontier = shared_vars(r.hypothesis, r.conclusion);
  return r;
}

Constraint random_constraint(const OntologyPtr& onto, Rng& rng, const std::string& name) {
  if (chance(rng, 0.5)) {
    PositiveConstraint pc{name, random_graph(onto, rng, corefs()), {}};
    for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) {
      ConceptualGraph alt = random_graph(onto, rng, corefs());
      Frontier f = shared_vars(pc.condition, alt);
      pc.alternatives.push_back({std::move(alt), std::move(f)});
    }
    return pc;
  }
  NegativeConstraint nc{name, random_graph(onto, rng, corefs()), random_graph(onto, rng, corefs()), {}};
  nc.frontier = shared_vars(nc.condition, nc.mandatory);
  return nc;
}

Property random_property(const OntologyPtr& onto, Rng& rng, const std::string& name) {
  static const std::vector<std::string> kDegrees = {"strategic", "tactic", "operational", "execution"};
  static const std::vector<std::string> kNotes = {"", "", "checked monthly", "it's \"opaque\" \\ text"};
  Property p;
  p.name = name;
  for (std::size_t i = uniform(rng, 0, 2); i > 0; --i) p.causes.push_back("c" + std::to_string(i));
  for (std::size_t i = uniform(rng, 1, 2); i > 0; --i) p.effects.push_back("e" + std::to_string(i));
  p.relation.kind = static_cast<RelationKind>(uniform(rng, 0, 4));
  p.relation.sense = chance(rng, 0.5) ? Sense::Beneficial : Sense::Harmful;
  if (p.relation.kind != RelationKind::Influence) p.relation.sense = Sense::Beneficial;
  if (!p.causes.empty() && chance(rng, 0.5)) p.relation.theta_c = random_expr(rng, p.causes, 2);
  if (chance(rng, 0.5)) p.relation.theta_e = random_expr(rng, p.effects, 2);
  p.relation.d = pick(rng, kNotes);
  p.degree.level = pick(rng, kDegrees);
  if (chance(rng, 0.3)) p.degree.tag = "structural";
  std::vector<std::string> facts = p.causes;
  facts.insert(facts.end(), p.effects.begin(), p.effects.end());
  for (const auto& f : facts)
    if (chance(rng, 0.6)) p.bindings.push_back({f, random_graph(onto, rng, corefs())});
  return p;
}

GenericProperty random_generic(const OntologyPtr& onto, Rng& rng, const std::string& name) {
  static const std::vector<std::string> kPerspectives = {"stability", "reliability", "integrity"};
  GenericProperty gp;
  gp.name = name;
  for (const auto& p : kPerspectives)
    if (chance(rng, 0.5)) gp.perspectives.push_back(p);
  if (gp.perspectives.empty()) gp.perspectives.push_back(pick(rng, kPerspectives));
  gp.typology = static_cast<Typology>(uniform(rng, 0, 2));
  for (std::size_t i = uniform(rng, 0, 2); i > 0; --i)
    gp.placeholders.push_back({"$p" + std::to_string(i), pick(rng, onto->concepts.types())});
  gp.body = random_property(onto, rng, name);
  // Put the placeholders into pattern markers.
  for (auto& b : gp.body.bindings) {
    if (gp.placeholders.empty()) break;
    ConceptualGraph g(onto);
    for (auto c : b.pattern.concepts()) {
      if (c.marker.is_individual() && chance(rng, 0.5))
        c.marker = Marker::individual(pick(rng, gp.placeholders).name);
      g.insert_concept(c);
    }
    for (const auto& e : b.pattern.relations()) g.insert_relation(e);
    b.pattern = std::move(g);
  }
  return gp;
}

PlacementDecl random_placement(Rng& rng, const std::string& property) {
  PlacementDecl pd;
  pd.property = property;
  pd.coords.target = static_cast<Target>(uniform(rng, 0, 2));
  pd.coords.scope = static_cast<Scope>(uniform(rng, 0, 1));
  pd.coords.aspect = static_cast<Aspect>(uniform(rng, 0, 2));
  pd.coords.time = static_cast<Epoch>(uniform(rng, 0, 2));
  return pd;
}

Granularity random_granularity(Rng& rng) {
  static const std::vector<std::string> kPool = {"strategic", "tactic", "operational", "execution",
                                                 "shift", "cell"};
  static const std::vector<std::string> kTemporal = {"", "", "years", "3 months", "weeks"};
  Granularity g;
  g.name = "g" + std::to_string(uniform(rng, 1, 99));
  std::vector<std::string> pool = kPool;
  std::shuffle(pool.begin(), pool.end(), rng);
  for (std::size_t i = uniform(rng, 1, 4); i > 0; --i) {
    g.degrees.push_back({pool.back(), pick(rng, kTemporal)});
    pool.pop_back();
  }
  return g;
}

namespace {

Value random_value(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0:
      return Value::of_bool(chance(rng, 0.5));
    case 1:
      return Value::of_number(static_cast<double>(uniform(rng, 0, 2000)) / 8.0 - 100);
    case 2:
      return Value::of_symbol(chance(rng, 0.5) ? "Energy" : "two words");
    case 3:
      return Value::of_symbol(chance(rng, 0.5) ? "true" : "42");
    default:
      return Value::of_set({"a", "b"});
  }
}

}  // namespace

FactStore random_facts(Rng& rng) {
  FactStore s;
  for (std::size_t i = uniform(rng, 0, 3); i > 0; --i) {
    ModelingVariable v{"v" + std::to_string(i), "level", {}, {}};
    const std::size_t kind = uniform(rng, 0, 2);
    if (kind == 1) {
      v.def.kind = Domain::Kind::Range;
      v.def.low = -10;
      v.def.high = static_cast<double>(uniform(rng, 0, 50));
    } else if (kind == 2) {
      v.def.kind = Domain::Kind::Enumeration;
      v.def.symbols = {"High", "Low"};
    }
    double t = 0;
    for (std::size_t k = uniform(rng, 0, 4); k > 0; --k) {
      t += static_cast<double>(uniform(rng, 1, 4)) / 2.0;
      Value val;
      if (kind == 1)
        val = Value::of_number(v.def.low + static_cast<double>(uniform(rng, 0, 10)) / 10.0 * (v.def.high - v.def.low));
      else if (kind == 2)
        val = Value::of_symbol(pick(rng, v.def.symbols));
      else
        val = random_value(rng);
      v.series.emplace_back(t, val);
    }
    s.add(std::move(v));
  }
  for (std::size_t i = uniform(rng, 0, 3); i > 0; --i)
    s.add(ModelingParameter{"p" + std::to_string(i), "real", random_value(rng)});
  for (std::size_t i = uniform(rng, 0, 2); i > 0; --i) {
    HandleFunction f{"fn" + std::to_string(i), {}, "bool"};
    for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) f.parameters.push_back(chance(rng, 0.5) ? "Activity" : "Flow");
    s.add(std::move(f));
  }
  if (chance(rng, 0.3)) s.add(PropertyRef{"trusted_one"});
  return s;
}

EnterpriseModel random_model(Rng& rng) {
  EnterpriseModel m;
  auto add = [&](std::string id, EntityKind kind, std::string type) {
    m.entities.push_back({std::move(id), kind, std::move(type), {}, {}, {}});
    return m.entities.size() - 1;
  };
  std::set<std::tuple<std::string, std::string, std::string>> links;
  auto link = [&](std::string k, std::string s, std::string t) {
    if (links.insert({k, s, t}).second) m.links.push_back({k, s, t, {}});
  };
  static const std::vector<std::string> kDomains = {"Material", "Energy", "Information"};
  const std::size_t na = uniform(rng, 1, 3), nf = uniform(rng, 0, 3), nr = uniform(rng, 0, 2);
  const bool process = chance(rng, 0.7);
  if (process) add("p1", EntityKind::Process, "Process");
  for (std::size_t i = 1; i <= na; ++i) {
    auto k = add("a" + std::to_string(i), EntityKind::Activity, "Activity");
    if (chance(rng, 0.3)) m.entities[k].attributes.emplace_back("cost", Value::of_number(static_cast<double>(uniform(rng, 1, 9))));
    if (chance(rng, 0.2))
      m.entities[k].variables.push_back({"load", "real", {}, {{0, Value::of_number(1)}, {2.5, Value::of_number(3)}}});
    if (process) link("composed_of", "p1", m.entities[k].id);
  }
  for (std::size_t i = 1; i <= nf; ++i) {
    auto k = add("f" + std::to_string(i), EntityKind::Flow, "Flow");
    if (chance(rng, 0.8))
      m.entities[k].attributes.emplace_back(std::string(kOperationalDomain), Value::of_symbol(pick(rng, kDomains)));
  }
  if (chance(rng, 0.5)) add("u1", EntityKind::Actor, "Actor");
  std::vector<std::string> locations;
  for (std::size_t i = 1; i <= nr; ++i) {
    static const std::vector<std::string> kTypes = {"Resource", "Machine", "Support"};
    add("r" + std::to_string(i), EntityKind::Resource, pick(rng, kTypes));
  }
  for (std::size_t i = 1; i <= uniform(rng, 0, 2); ++i) {
    add("L" + std::to_string(i), EntityKind::Location, "Location");
    locations.push_back("L" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= na; ++i) {
    const std::string a = "a" + std::to_string(i);
    if (nf && chance(rng, 0.7)) link("has_input", a, "f" + std::to_string(uniform(rng, 1, nf)));
    if (nf && chance(rng, 0.7)) link("has_output", a, "f" + std::to_string(uniform(rng, 1, nf)));
    if (nr && chance(rng, 0.6)) link("uses_resource", a, "r" + std::to_string(uniform(rng, 1, nr)));
    if (m.find("u1") && chance(rng, 0.5)) link("performed_by", a, "u1");
    if (chance(rng, 0.4)) link("precedes", a, "a" + std::to_string(uniform(rng, 1, na)));
  }
  for (std::size_t i = 1; i <= nr; ++i)
    if (!locations.empty() && chance(rng, 0.7)) link("located_at", "r" + std::to_string(i), pick(rng, locations));
  return m;
}

// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool same_graph(const ConceptualGraph& a, const ConceptualGraph& b, std::string* why,
                const std::string& what) {
  if (structurally_equal(a, b)) return true;
  return fail(why, what + " differs:\n" + serialize_body(a, "  ") + "vs\n" + serialize_body(b, "  "));
}

// Frontiers compared by position of the nodes in each graph.
std::vector<std::pair<std::size_t, std::size_t>> positions(const Frontier& f, const ConceptualGraph& l,
                                                           const ConceptualGraph& r) {
  auto pos = [](const ConceptualGraph& g, NodeId id) {
    const auto cs = g.concepts();
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].id == id) return i;
    return cs.size();
  };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [x, y] : f) out.emplace_back(pos(l, x), pos(r, y));
  std::sort(out.begin(), out.end());
  return out;
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

}  // namespace

bool same(const Ontology& a, const Ontology& b, std::string* why) {
  if (a.concepts.types() != b.concepts.types()) return fail(why, "concept types differ");
  for (const auto& t : a.concepts.types())
    if (a.concepts.parents(t) != b.concepts.parents(t)) return fail(why, "parents of " + t + " differ");
  if (a.relations.relations() != b.relations.relations()) return fail(why, "relations differ");
  for (const auto& r : a.relations.relations()) {
    if (a.relations.signature(r) != b.relations.signature(r)) return fail(why, "signature of " + r);
    if (a.relations.parents(r) != b.relations.parents(r)) return fail(why, "parents of " + r);
  }
  return true;
}

bool same(const GraphRule& a, const GraphRule& b, std::string* why) {
  if (a.name != b.name) return fail(why, "rule names differ");
  if (!same_graph(a.hypothesis, b.hypothesis, why, "hypothesis")) return false;
  if (!same_graph(a.conclusion, b.conclusion, why, "conclusion")) return false;
  if (positions(a.frontier, a.hypothesis, a.conclusion) != positions(b.frontier, b.hypothesis, b.conclusion))
    return fail(why, "frontiers differ");
  return true;
}

bool same(const Constraint& a, const Constraint& b, std::string* why) {
  if (a.index() != b.index()) return fail(why, "constraint polarity differs");
  if (const auto* pa = std::get_if<PositiveConstraint>(&a)) {
    const auto& pb = std::get<PositiveConstraint>(b);
    if (pa->name != pb.name) return fail(why, "names differ");
    if (!same_graph(pa->condition, pb.condition, why, "condition")) return false;
    if (pa->alternatives.size() != pb.alternatives.size()) return fail(why, "alternative count");
    for (std::size_t i = 0; i < pa->alternatives.size(); ++i) {
      if (!same_graph(pa->alternatives[i].graph, pb.alternatives[i].graph, why, "alternative"))
        return false;
      if (positions(pa->alternatives[i].frontier, pa->condition, pa->alternatives[i].graph) !=
          positions(pb.alternatives[i].frontier, pb.condition, pb.alternatives[i].graph))
        return fail(why, "alternative frontier differs");
    }
    return true;
  }
  const auto& na = std::get<NegativeConstraint>(a);
  const auto& nb = std::get<NegativeConstraint>(b);
  if (na.name != nb.name) return fail(why, "names differ");
  if (!same_graph(na.condition, nb.condition, why, "condition")) return false;
  if (!same_graph(na.mandatory, nb.mandatory, why, "mandatory")) return false;
  if (positions(na.frontier, na.condition, na.mandatory) != positions(nb.frontier, nb.condition, nb.mandatory))
    return fail(why, "frontier differs");
  return true;
}

bool same(const Property& a, const Property& b, std::string* why) {
  if (a.name != b.name) return fail(why, "names differ");
  if (a.causes != b.causes || a.effects != b.effects) return fail(why, "facts differ");
  if (a.relation.kind != b.relation.kind || a.relation.sense != b.relation.sense)
    return fail(why, "relation kind differs");
  if (!same_expr(a.relation.theta_c, b.relation.theta_c)) return fail(why, "theta_c differs");
  if (!same_expr(a.relation.theta_e, b.relation.theta_e)) return fail(why, "theta_e differs");
  if (a.relation.d != b.relation.d) return fail(why, "annotation differs");
  if (!(a.degree == b.degree)) return fail(why, "degree differs");
  if (a.bindings.size() != b.bindings.size()) return fail(why, "binding count differs");
  for (std::size_t i = 0; i < a.bindings.size(); ++i) {
    if (a.bindings[i].fact != b.bindings[i].fact) return fail(why, "binding fact differs");
    if (!same_graph(a.bindings[i].pattern, b.bindings[i].pattern, why, "binding pattern")) return false;
  }
  return true;
}

bool same(const GenericProperty& a, const GenericProperty& b, std::string* why) {
  if (a.name != b.name || a.perspectives != b.perspectives || a.typology != b.typology)
    return fail(why, "generic header differs");
  if (a.placeholders.size() != b.placeholders.size()) return fail(why, "placeholders differ");
  for (std::size_t i = 0; i < a.placeholders.size(); ++i)
    if (a.placeholders[i].name != b.placeholders[i].name || a.placeholders[i].type != b.placeholders[i].type)
      return fail(why, "placeholder differs");
  return same(a.body, b.body, why);
}

bool same(const FactStore& a, const FactStore& b, std::string* why) {
  if (a.facts() != b.facts()) return fail(why, "facts differ:\n" + serialize(a) + "vs\n" + serialize(b));
  return true;
}

}  // namespace cgvv::testing
