#include <algorithm>
#include <set>
#include <sstream>

#include "cgvv/property.hpp"

namespace cgvv {

Granularity Granularity::standard() {
  Granularity g;
  for (const char* d : {"strategic", "tactic", "operational", "execution"})
    g.degrees.push_back({d, ""});
  return g;
}

bool Granularity::contains(std::string_view degree) const {
  return std::any_of(degrees.begin(), degrees.end(),
                     [&](const Degree& d) { return d.name == degree; });
}

void Granularity::validate() const {
  std::set<std::string> seen;
  for (const auto& d : degrees)
    if (!seen.insert(d.name).second)
      throw PropertyError("duplicate-degree",
                          "degree '" + d.name + "' appears twice in granularity " + name);
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Implication:
      return "implication";
    case RelationKind::Equivalence:
      return "equivalence";
    case RelationKind::Temporal:
      return "temporal";
    case RelationKind::Influence:
      return "influence";
    case RelationKind::Emergence:
      return "emergence";
  }
  return "?";
}

const ConceptualGraph* Property::pattern_for(std::string_view fact) const {
  for (const auto& b : bindings)
    if (b.fact == fact) return &b.pattern;
  return nullptr;
}

void validate(const Property& p) {
  if (p.effects.empty())
    throw PropertyError("no-effects", "property " + p.name + " has no effect");
  for (const auto& c : p.causes)
    if (std::find(p.effects.begin(), p.effects.end(), c) != p.effects.end())
      throw PropertyError("cause-effect-overlap", "property " + p.name + ": fact '" + c +
                                                      "' is both a cause and an effect");
  std::set<std::string> bound;
  for (const auto& b : p.bindings)
    if (!bound.insert(b.fact).second)
      throw PropertyError("duplicate-binding",
                          "property " + p.name + " binds '" + b.fact + "' twice");
}

namespace {

ExprPtr conjunction_of(const std::vector<std::string>& facts) {
  std::vector<ExprPtr> items;
  for (const auto& f : facts) items.push_back(expr::name(f));
  return expr::conj(std::move(items));
}

std::string time_text(std::optional<TimePoint> t) {
  return t ? "t=" + to_string(Value::of_number(*t)) : "the single state";
}

// ---- disjunctive normal form over fact literals ----------------------------

struct Literal {
  std::string fact;
  bool negated = false;
  auto operator<=>(const Literal&) const = default;
};
using Conjunct = std::vector<Literal>;
using Dnf = std::vector<Conjunct>;

Dnf to_dnf(const Expr& e, bool negate);

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Conjunct c = x;
      for (const auto& l : y)
        if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
      out.push_back(std::move(c));
    }
  return out;
}

Dnf to_dnf(const Expr& e, bool negate) {
  switch (e.kind) {
    case Expr::Kind::Name:
      return {{Literal{e.name, negate}}};
    case Expr::Kind::Literal:
      if (e.value.kind == Value::Kind::Bool) {
        if (e.value.boolean != negate) return {Conjunct{}};
        return {};
      }
      break;
    case Expr::Kind::Not:
      return to_dnf(*e.args[0], !negate);
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      // De Morgan: a negated conjunction distributes as a disjunction.
      const bool as_and = (e.kind == Expr::Kind::And) != negate;
      Dnf acc = as_and ? Dnf{Conjunct{}} : Dnf{};
      for (const auto& a : e.args) {
        Dnf sub = to_dnf(*a, negate);
        if (as_and) {
          acc = dnf_and(acc, sub);
        } else {
          acc.insert(acc.end(), sub.begin(), sub.end());
        }
      }
      return acc;
    }
    default:
      break;
  }
  throw PropertyError("unbindable-fact",
                      "'" + to_string(e) + "' cannot be bound to a graph pattern");
}

ConceptualGraph merged_pattern(const Property& p, const Conjunct& c, const OntologyPtr& onto) {
  ConceptualGraph g(onto);
  for (const auto& lit : c) {
    const ConceptualGraph* pattern = p.pattern_for(lit.fact);
    if (!pattern)
      throw PropertyError("unbindable-fact",
                          "property " + p.name + ": fact '" + lit.fact + "' has no graph binding");
    g = disjoint_union(g, *pattern);
  }
  return normalize_coref(g);
}

Frontier shared_variables(const ConceptualGraph& a, const ConceptualGraph& b) {
  Frontier out;
  for (const auto& x : a.concepts()) {
    if (!x.marker.is_coref()) continue;
    for (const auto& y : b.concepts())
      if (y.marker == x.marker) out.emplace_back(x.id, y.id);
  }
  return out;
}

std::vector<Constraint> compile_direction(const Property& p, const ExprPtr& cond,
                                          const ExprPtr& eff, const OntologyPtr& onto) {
  const Dnf cond_dnf = to_dnf(*cond, false);
  const Dnf eff_dnf = to_dnf(*eff, false);
  auto has_negation = [](const Conjunct& c) {
    return std::any_of(c.begin(), c.end(), [](const Literal& l) { return l.negated; });
  };
  const bool negative_effect =
      eff_dnf.size() == 1 && !eff_dnf.front().empty() &&
      std::all_of(eff_dnf.front().begin(), eff_dnf.front().end(),
                  [](const Literal& l) { return l.negated; });

  std::vector<Constraint> out;
  for (const auto& c : cond_dnf) {
    if (has_negation(c))
      throw PropertyError("unsupported-negation",
                          "property " + p.name + ": negated causes cannot be checked structurally");
    ConceptualGraph condition = merged_pattern(p, c, onto);
    if (negative_effect) {
      for (const auto& lit : eff_dnf.front()) {
        ConceptualGraph forbidden = merged_pattern(p, {Literal{lit.fact, false}}, onto);
        NegativeConstraint nc{p.name, condition, forbidden, shared_variables(condition, forbidden)};
        out.emplace_back(std::move(nc));
      }
      continue;
    }
    PositiveConstraint pc{p.name, condition, {}};
    for (const auto& e : eff_dnf) {
      if (has_negation(e))
        throw PropertyError("unsupported-negation",
                            "property " + p.name +
                                ": negated effects are only supported as a whole conjunction");
      ConceptualGraph alt = merged_pattern(p, e, onto);
      Frontier frontier = shared_variables(condition, alt);
      pc.alternatives.push_back({std::move(alt), std::move(frontier)});
    }
    if (pc.alternatives.empty())
      throw PropertyError("unbindable-fact", "property " + p.name + ": the effect is never true");
    out.emplace_back(std::move(pc));
  }
  return out;
}

void rename(Constraint& c, const std::string& name) {
  std::visit([&](auto& x) { x.name = name; }, c);
}

// ---- per-kind verification ------------------------------------------------

std::vector<std::optional<TimePoint>> evaluation_points(const FactStore& store) {
  std::vector<std::optional<TimePoint>> out;
  for (TimePoint t : store.times()) out.emplace_back(t);
  if (out.empty()) out.emplace_back(std::nullopt);
  return out;
}

const FactStore& need_store(const VerificationContext& ctx, const Property& p) {
  if (!ctx.store)
    throw PropertyError("missing-facts", "property " + p.name + " needs a fact store");
  return *ctx.store;
}

const ConceptualGraph& need_graph(const VerificationContext& ctx, const Property& p) {
  if (!ctx.graph)
    throw PropertyError("missing-graph", "property " + p.name + " needs a model graph");
  return *ctx.graph;
}

Verdict verify_structural(const Property& p, const VerificationContext& ctx) {
  const ConceptualGraph& g = ctx.saturated ? *ctx.saturated : need_graph(ctx, p);
  Verdict out;
  std::vector<Constraint> constraints = compile_to_constraints(p);
  for (const auto& c : constraints) {
    Verdict v = std::holds_alternative<PositiveConstraint>(c)
                    ? check_positive(g, std::get<PositiveConstraint>(c))
                    : check_negative(g, std::get<NegativeConstraint>(c));
    if (v.status != Status::Violated) continue;
    out.notes.push_back("constraint " + name_of(c) + " violated");
    if (out.status == Status::Satisfied) {
      out.status = Status::Violated;
      out.witnesses = std::move(v.witnesses);
      out.witness_pattern = std::move(v.witness_pattern);
    }
  }
  return out;
}

Verdict verify_logical(const Property& p, const VerificationContext& ctx) {
  const FactStore& store = need_store(ctx, p);
  const ExprPtr c = cause_condition(p);
  const ExprPtr e = effect_condition(p);
  const bool equivalence = p.relation.kind == RelationKind::Equivalence;
  Verdict out;
  for (const auto& t : evaluation_points(store)) {
    const bool vc = eval_bool(*c, store, t);
    const bool ve = eval_bool(*e, store, t);
    if (vc && !ve)
      out.notes.push_back("at " + time_text(t) + ": causes hold but effects do not");
    else if (equivalence && ve && !vc)
      out.notes.push_back("at " + time_text(t) + ": effects hold but causes do not");
  }
  out.status = out.notes.empty() ? Status::Satisfied : Status::Violated;
  return out;
}

Verdict verify_temporal(const Property& p, const VerificationContext& ctx) {
  const FactStore& store = need_store(ctx, p);
  const auto points = evaluation_points(store);
  const ExprPtr c = cause_condition(p);
  const ExprPtr e = effect_condition(p);
  std::vector<bool> effect_at;
  for (const auto& t : points) effect_at.push_back(eval_bool(*e, store, t));
  Verdict out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!eval_bool(*c, store, points[i])) continue;
    bool later = std::find(effect_at.begin() + static_cast<std::ptrdiff_t>(i), effect_at.end(),
                           true) != effect_at.end();
    if (!later)
      out.notes.push_back("insufficient horizon: causes hold at " + time_text(points[i]) +
                          " but effects do not hold at any later point up to " +
                          time_text(points.back()));
  }
  out.status = out.notes.empty() ? Status::Satisfied : Status::Violated;
  return out;
}

int sign(double d) { return (d > 0) - (d < 0); }

double numeric_at(const FactStore& store, const std::string& fact, TimePoint t) {
  const Fact* f = store.find(fact);
  const auto* mv = f ? std::get_if<ModelingVariable>(f) : nullptr;
  if (!mv)
    throw PropertyError("type-mismatch",
                        "influence needs '" + fact + "' to be a modeling variable");
  Value v = value_at(*mv, t);
  if (v.kind != Value::Kind::Number)
    throw PropertyError("type-mismatch", "influence needs '" + fact + "' to be numeric");
  return v.number;
}

Verdict verify_influence(const Property& p, const VerificationContext& ctx) {
  const FactStore& store = need_store(ctx, p);
  if (p.causes.empty())
    throw PropertyError("invalid-influence", "influence property " + p.name + " has no cause");
  const auto times = store.times();
  const int polarity = p.relation.sense == Sense::Beneficial ? 1 : -1;
  Verdict out;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const TimePoint a = times[i], b = times[i + 1];
    if (p.relation.theta_c && !eval_bool(*p.relation.theta_c, store, a)) continue;
    int direction = 0;
    bool conflict = false;
    for (const auto& c : p.causes) {
      int s = sign(numeric_at(store, c, b) - numeric_at(store, c, a));
      if (s == 0) continue;
      if (direction != 0 && s != direction) conflict = true;
      direction = s;
    }
    if (direction == 0 || conflict) continue;
    const int expected = direction * polarity;
    for (const auto& e : p.effects) {
      int s = sign(numeric_at(store, e, b) - numeric_at(store, e, a));
      if (s != expected) {
        std::ostringstream os;
        os << "between " << time_text(a) << " and " << time_text(b) << ": causes moved "
           << (direction > 0 ? "up" : "down") << " but " << e << " "
           << (s > 0 ? "rose" : s < 0 ? "fell" : "did not move");
        out.notes.push_back(os.str());
      }
    }
  }
  out.status = out.notes.empty() ? Status::Satisfied : Status::Violated;
  return out;
}

Verdict verify_emergence(const Property& p, const VerificationContext& ctx) {
  const ConceptualGraph& g = need_graph(ctx, p);
  Conjunct effects;
  for (const auto& e : p.effects) effects.push_back({e, false});
  auto effect = std::make_shared<const ConceptualGraph>(merged_pattern(p, effects, g.ontology()));

  Verdict out;
  out.witness_pattern = effect;
  bool causes_hold = true;
  const bool causes_bound =
      !p.relation.theta_c && std::all_of(p.causes.begin(), p.causes.end(),
                                         [&](const auto& c) { return p.pattern_for(c); });
  if (causes_bound) {
    Conjunct causes;
    for (const auto& c : p.causes) causes.push_back({c, false});
    causes_hold = exists_projection(merged_pattern(p, causes, g.ontology()), g);
  } else {
    causes_hold = eval_bool(*cause_condition(p), need_store(ctx, p));
  }
  if (!causes_hold) {
    out.notes.push_back("causes do not hold; nothing to verify");
    return out;
  }
  auto before = find_projections(*effect, g, 1);
  if (!before.empty()) {
    out.status = Status::Violated;
    out.witnesses = std::move(before);
    out.notes.push_back("effect already present in the initial graph");
    return out;
  }
  SaturationResult sat = saturate(g, ctx.rules, ctx.bound);
  out.witnesses = find_projections(*effect, sat.graph);
  if (out.witnesses.empty()) {
    out.status = Status::Violated;
    out.notes.push_back("effect absent after saturation (" +
                        std::to_string(sat.report.iterations) + " pass(es)" +
                        (sat.report.reached_fixpoint ? ")" : ", bound reached)"));
  }
  return out;
}

}  // namespace

ExprPtr cause_condition(const Property& p) {
  return p.relation.theta_c ? p.relation.theta_c : conjunction_of(p.causes);
}

ExprPtr effect_condition(const Property& p) {
  return p.relation.theta_e ? p.relation.theta_e : conjunction_of(p.effects);
}

std::vector<Constraint> compile_to_constraints(const Property& p) {
  validate(p);
  const auto kind = p.relation.kind;
  if (kind != RelationKind::Implication && kind != RelationKind::Equivalence)
    throw PropertyError("unsupported-kind", "property " + p.name + " is a " +
                                                std::string(to_string(kind)) +
                                                " property; only logical kinds compile");
  if (p.bindings.empty())
    throw PropertyError("unbindable-fact", "property " + p.name + " has no graph bindings");
  const OntologyPtr& onto = p.bindings.front().pattern.ontology();
  const ExprPtr c = cause_condition(p);
  const ExprPtr e = effect_condition(p);
  std::vector<Constraint> out = compile_direction(p, c, e, onto);
  if (kind == RelationKind::Equivalence) {
    auto back = compile_direction(p, e, c, onto);
    out.insert(out.end(), std::make_move_iterator(back.begin()),
               std::make_move_iterator(back.end()));
  }
  if (out.size() > 1)
    for (std::size_t i = 0; i < out.size(); ++i) rename(out[i], p.name + "." + std::to_string(i + 1));
  return out;
}

Verdict verify_property(const Property& p, const VerificationContext& ctx) {
  validate(p);
  switch (p.relation.kind) {
    case RelationKind::Implication:
    case RelationKind::Equivalence:
      return p.bindings.empty() ? verify_logical(p, ctx) : verify_structural(p, ctx);
    case RelationKind::Temporal:
      return verify_temporal(p, ctx);
    case RelationKind::Influence:
      return verify_influence(p, ctx);
    case RelationKind::Emergence:
      return verify_emergence(p, ctx);
  }
  throw PropertyError("unsupported-kind", "unknown relation kind");
}

}  // namespace cgvv
