#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace cgvv {
namespace {

using testing::Rng;

Knowledge knowledge(const std::string& text, const OntologyPtr& onto) {
  std::vector<Diagnostic> diags;
  auto k = parse_knowledge(text, "<test>", onto, diags);
  EXPECT_FALSE(has_errors(diags)) << (diags.empty() ? "" : render(diags[0]));
  return k;
}

FactStore facts(const std::string& text) {
  FactStore s;
  std::vector<Diagnostic> diags;
  parse_facts(text, "<facts>", s, diags);
  EXPECT_FALSE(has_errors(diags)) << (diags.empty() ? "" : render(diags[0]));
  return s;
}

template <typename F>
std::string code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// ---- facts ------------------------------------------------------------------

TEST(Facts, NamesAreUniqueAcrossKinds) {
  FactStore s;
  s.add(ModelingParameter{"x", "real", Value::of_number(1)});
  EXPECT_EQ(code_of([&] { s.add(HandleFunction{"x", {}, "bool"}); }), "duplicate-fact");
}

TEST(Facts, VariablesStayInTheirDomain) {
  FactStore s;
  ModelingVariable v{"level", "real", {Domain::Kind::Range, 0, 10, {}}, {{0, Value::of_number(11)}}};
  EXPECT_EQ(code_of([&] { s.add(v); }), "domain-violation");
  ModelingVariable e{"mode", "sym", {Domain::Kind::Enumeration, 0, 0, {"On", "Off"}}, {{0, Value::of_symbol("Idle")}}};
  EXPECT_EQ(code_of([&] { s.add(e); }), "domain-violation");
}

TEST(Facts, PiecewiseConstantSeries) {
  ModelingVariable v{"x", "real", {}, {{1, Value::of_number(5)}, {3, Value::of_number(7)}}};
  EXPECT_EQ(value_at(v, 1).number, 5);
  EXPECT_EQ(value_at(v, 2.5).number, 5);
  EXPECT_EQ(value_at(v, 3).number, 7);
  EXPECT_EQ(value_at(v, 100).number, 7);
  EXPECT_EQ(code_of([&] { value_at(v, 0.5); }), "missing-time-index");
}

TEST(Facts, TimesAreTheUnionOfSeries) {
  auto s = facts("var a: real = [(0, 1), (2, 1)]\nvar b: real = [(1, 0), (2, 3)]\nparam p: real = 4\n");
  EXPECT_EQ(s.times(), (std::vector<TimePoint>{0, 1, 2}));
}

// ---- expressions ------------------------------------------------------------

TEST(Expr, EmptyConjunctionIsTrue) {
  FactStore s;
  EXPECT_TRUE(eval_bool(*expr::conj({}), s));
  EXPECT_FALSE(eval_bool(*expr::disj({}), s));
  Property p;
  p.name = "p";
  p.effects = {"e"};
  EXPECT_TRUE(eval_bool(*cause_condition(p), s));
}

TEST(Expr, OperationalDomainOfAFlow) {
  EnterpriseModel m = parse_model("flow heat: Energy;\n");
  FactStore s = extract_facts(m);
  auto e = expr::compare("=", expr::name("domain_of.heat"), expr::name("Energy"));
  EXPECT_TRUE(eval_bool(*e, s));
  auto f = expr::compare("=", expr::call("domain_of", {expr::name("heat")}), expr::name("Material"));
  EXPECT_FALSE(eval_bool(*f, s));
}

TEST(Expr, Errors) {
  auto s = facts("var v: real = [(1, 2)]\nparam p: real = 1\nfunction fn(Flow): bool\n");
  EXPECT_EQ(code_of([&] { eval(*expr::name("nope"), s); }), "unknown-fact");
  EXPECT_EQ(code_of([&] { eval(*expr::name("v"), s); }), "missing-time-index");
  EXPECT_EQ(code_of([&] { eval(*expr::negate(expr::name("p")), s); }), "type-mismatch");
  EXPECT_EQ(code_of([&] { eval(*expr::call("p", {}), s); }), "unknown-function");
  EXPECT_EQ(eval(*expr::name("v"), s, 1.5).number, 2);
}

// Independent evaluator for the oracle comparison: values as a plain
// variant, errors as nullopt, with the documented semantics (short-circuit
// and/or, = and != only within one kind, arithmetic and ordering on
// numbers, membership of a symbol in a set).
using OVal = std::variant<bool, double, std::string, std::set<std::string>>;

struct Oracle {
  std::map<std::string, OVal> names;

  std::optional<OVal> fn(const std::string& name, const OVal& a) const {
    if (name == "f") return OVal(std::holds_alternative<double>(a) ? std::get<double>(a) * 2 : 0.0);
    return OVal(std::holds_alternative<bool>(a) ? !std::get<bool>(a) : true);
  }

  std::optional<OVal> operator()(const Expr& e) const {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Literal:
        switch (e.value.kind) {
          case Value::Kind::Bool: return OVal(e.value.boolean);
          case Value::Kind::Number: return OVal(e.value.number);
          case Value::Kind::Symbol: return OVal(e.value.symbol);
          case Value::Kind::Set: return OVal(std::set<std::string>(e.value.set.begin(), e.value.set.end()));
        }
        return std::nullopt;
      case K::Name: {
        auto it = names.find(e.name);
        if (it == names.end()) return std::nullopt;
        return it->second;
      }
      case K::Call: {
        auto a = (*this)(*e.args.at(0));
        if (!a) return std::nullopt;
        return fn(e.name, *a);
      }
      case K::SetLiteral: {
        std::set<std::string> out;
        for (const auto& x : e.args) {
          auto v = (*this)(*x);
          if (!v || !std::holds_alternative<std::string>(*v)) return std::nullopt;
          out.insert(std::get<std::string>(*v));
        }
        return OVal(out);
      }
      case K::Not: {
        auto v = (*this)(*e.args[0]);
        if (!v || !std::holds_alternative<bool>(*v)) return std::nullopt;
        return OVal(!std::get<bool>(*v));
      }
      case K::And:
      case K::Or: {
        const bool stop = e.kind == K::Or;
        for (const auto& x : e.args) {
          auto v = (*this)(*x);
          if (!v || !std::holds_alternative<bool>(*v)) return std::nullopt;
          if (std::get<bool>(*v) == stop) return OVal(stop);
        }
        return OVal(!stop);
      }
      case K::Compare: {
        auto a = (*this)(*e.args[0]), b = (*this)(*e.args[1]);
        if (!a || !b) return std::nullopt;
        if (e.op == "=" || e.op == "!=") {
          if (a->index() != b->index()) return std::nullopt;
          return OVal((*a == *b) == (e.op == "="));
        }
        if (!std::holds_alternative<double>(*a) || !std::holds_alternative<double>(*b)) return std::nullopt;
        const double x = std::get<double>(*a), y = std::get<double>(*b);
        if (e.op == "<") return OVal(x < y);
        if (e.op == "<=") return OVal(x <= y);
        if (e.op == ">") return OVal(x > y);
        return OVal(x >= y);
      }
      case K::Arith: {
        auto a = (*this)(*e.args[0]);
        if (!a || !std::holds_alternative<double>(*a)) return std::nullopt;
        auto b = (*this)(*e.args[1]);
        if (!b || !std::holds_alternative<double>(*b)) return std::nullopt;
        const double x = std::get<double>(*a), y = std::get<double>(*b);
        if (e.op == "+") return OVal(x + y);
        if (e.op == "-") return OVal(x - y);
        if (e.op == "*") return OVal(x * y);
        if (y == 0) return std::nullopt;
        return OVal(x / y);
      }
      case K::In: {
        auto a = (*this)(*e.args[0]), b = (*this)(*e.args[1]);
        if (!a || !b || !std::holds_alternative<std::string>(*a) ||
            !std::holds_alternative<std::set<std::string>>(*b))
          return std::nullopt;
        return OVal(std::get<std::set<std::string>>(*b).count(std::get<std::string>(*a)) > 0);
      }
    }
    return std::nullopt;
  }
};

bool same_value(const Value& v, const OVal& o) {
  switch (v.kind) {
    case Value::Kind::Bool: return std::holds_alternative<bool>(o) && std::get<bool>(o) == v.boolean;
    case Value::Kind::Number: return std::holds_alternative<double>(o) && std::get<double>(o) == v.number;
    case Value::Kind::Symbol: return std::holds_alternative<std::string>(o) && std::get<std::string>(o) == v.symbol;
    case Value::Kind::Set:
      return std::holds_alternative<std::set<std::string>>(o) &&
             std::get<std::set<std::string>>(o) == std::set<std::string>(v.set.begin(), v.set.end());
  }
  return false;
}

TEST(Expr, MatchesIndependentEvaluator) {
  FactStore s;
  s.add(ModelingParameter{"n1", "real", Value::of_number(2)});
  s.add(ModelingParameter{"n2", "bool", Value::of_bool(true)});
  s.add(ModelingParameter{"n3", "sym", Value::of_symbol("S1")});
  s.add(HandleFunction{"f", {"real"}, "real"});
  s.add(HandleFunction{"g", {"bool"}, "bool"});
  s.set_evaluator([](const std::string& name, std::span<const Value> args, std::optional<TimePoint>) {
    const Value& a = args[0];
    if (name == "f") return Value::of_number(a.kind == Value::Kind::Number ? a.number * 2 : 0);
    return Value::of_bool(a.kind == Value::Kind::Bool ? !a.boolean : true);
  });
  Oracle oracle;
  oracle.names = {{"n1", 2.0}, {"n2", true}, {"n3", std::string("S1")}};

  Rng rng(61);
  std::size_t ok = 0;
  for (int seed = 0; seed < 1000; ++seed) {
    auto e = testing::random_expr(rng, {"n1", "n2", "n3"}, 4);
    auto want = oracle(*e);
    std::optional<Value> got;
    try {
      got = eval(*e, s);
    } catch (const PropertyError&) {
    }
    ASSERT_EQ(got.has_value(), want.has_value()) << to_string(*e);
    if (got) {
      ASSERT_TRUE(same_value(*got, *want)) << to_string(*e) << " = " << to_string(*got);
      ++ok;
    }
  }
  EXPECT_GT(ok, 300u);
}

// ---- properties -------------------------------------------------------------

TEST(Granularity, StandardAndDuplicates) {
  auto g = Granularity::standard();
  ASSERT_EQ(g.degrees.size(), 4u);
  EXPECT_EQ(g.degrees.front().name, "strategic");
  EXPECT_EQ(g.degrees.back().name, "execution");
  EXPECT_TRUE(g.contains("tactic"));
  g.degrees.push_back({"tactic", ""});
  EXPECT_EQ(code_of([&] { g.validate(); }), "duplicate-degree");
}

TEST(Property, Invariants) {
  Property p;
  p.name = "p";
  p.causes = {"a"};
  EXPECT_EQ(code_of([&] { validate(p); }), "no-effects");
  p.effects = {"a"};
  EXPECT_EQ(code_of([&] { validate(p); }), "cause-effect-overlap");
  p.effects = {"b"};
  EXPECT_NO_THROW(validate(p));
}

struct Energy {
  Bundle counter = testing::load_fixtures({"energy_counter.model", "energy.prop"});
  Bundle repaired = testing::load_fixtures({"energy_repaired.model", "energy.prop"});
  const Property& prop() const { return counter.properties.at(0); }
};

ConceptualGraph model_graph(const Bundle& b) { return model_to_cg(*b.model, b.ontology); }

TEST(Compile, EnergyPropertyIsOnePositiveConstraintWithTwoAlternatives) {
  Energy e;
  ASSERT_TRUE(e.counter.ok());
  auto cs = compile_to_constraints(e.prop());
  ASSERT_EQ(cs.size(), 1u);
  const auto& pc = std::get<PositiveConstraint>(cs[0]);
  EXPECT_EQ(pc.condition.concepts().size(), 3u);
  ASSERT_EQ(pc.alternatives.size(), 2u);
  for (const auto& a : pc.alternatives) EXPECT_EQ(a.frontier.size(), 1u);  // the shared activity
}

TEST(Compile, EquivalenceGivesTwoConstraints) {
  Energy e;
  Property p = e.prop();
  p.relation.kind = RelationKind::Equivalence;
  p.effects = {"material_input"};
  p.relation.theta_e = nullptr;
  auto cs = compile_to_constraints(p);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(name_of(cs[0]), p.name + ".1");
  EXPECT_EQ(name_of(cs[1]), p.name + ".2");
}

TEST(Compile, EmptyCauseGivesEmptyCondition) {
  Energy e;
  Property p = e.prop();
  p.causes.clear();
  auto cs = compile_to_constraints(p);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(std::get<PositiveConstraint>(cs[0]).condition.empty());
}

TEST(Compile, Errors) {
  Energy e;
  Property p = e.prop();
  p.relation.kind = RelationKind::Temporal;
  EXPECT_EQ(code_of([&] { compile_to_constraints(p); }), "unsupported-kind");
  p = e.prop();
  p.bindings.pop_back();
  EXPECT_EQ(code_of([&] { compile_to_constraints(p); }), "unbindable-fact");
}

TEST(Verify, EnergyVerdictsAgreeWithDirectChecks) {
  Energy e;
  for (const Bundle* b : {&e.counter, &e.repaired}) {
    auto g = model_graph(*b);
    VerificationContext ctx{&g, nullptr, &b->facts, {}, 100};
    auto v = verify_property(e.prop(), ctx);
    auto direct = check_positive(g, std::get<PositiveConstraint>(compile_to_constraints(e.prop())[0]));
    EXPECT_EQ(v.status, direct.status);
    EXPECT_EQ(v.witnesses, direct.witnesses);
  }
  auto g = model_graph(e.counter);
  VerificationContext ctx{&g, nullptr, &e.counter.facts, {}, 100};
  auto v = verify_property(e.prop(), ctx);
  ASSERT_EQ(v.status, Status::Violated);
  ASSERT_EQ(v.witnesses.size(), 1u);
  EXPECT_EQ(summarize(*v.witness_pattern, g, v.witnesses[0]), "a=heating,out=heat");
  auto gr = model_graph(e.repaired);
  VerificationContext ctx2{&gr, nullptr, &e.repaired.facts, {}, 100};
  EXPECT_EQ(verify_property(e.prop(), ctx2).status, Status::Satisfied);
}

const char* kP1 = R"(
  property P1 degree operational kind implication {
    causes { }
    effects { both where not both }
    bind both to graph { [Person: *p] [Department: *d] (member-of p d) (not-member-of p d) }
  }
)";

TEST(Verify, P1AgreesWithRefutation) {
  auto b = testing::load_fixtures({"membership.onto", "gh.cg", "r1.rules", "nc.constraints"});
  auto k = knowledge(kP1, b.ontology);
  ASSERT_EQ(k.properties.size(), 1u);
  const auto& gh = b.find_graph("G_h")->graph;
  std::vector<NegativeConstraint> negs{std::get<NegativeConstraint>(b.constraints[0])};
  for (bool with_rules : {true, false}) {
    std::vector<GraphRule> rules;
    if (with_rules) rules = b.rules;
    auto sat = saturate(gh, rules, 100).graph;
    VerificationContext ctx{&gh, &sat, &b.facts, rules, 100};
    auto v = verify_property(k.properties[0], ctx);
    auto proof = prove_refutation(gh, rules, negs, 100);
    EXPECT_EQ(v.status == Status::Violated, proof.outcome == ProofOutcome::ContradictionEstablished);
    EXPECT_EQ(v.status, with_rules ? Status::Violated : Status::Satisfied);
  }
}

TEST(Verify, TemporalVacuityAndAntecedence) {
  auto k = knowledge("property T degree operational kind temporal { causes { c } effects { e } }",
                     reference_ontology());
  const Property& p = k.properties.at(0);
  auto never = facts("var c: bool = [(0, false), (1, false)]\nvar e: bool = [(0, false), (1, false)]\n");
  VerificationContext ctx{nullptr, nullptr, &never, {}, 100};
  EXPECT_EQ(verify_property(p, ctx).status, Status::Satisfied);
  auto later = facts("var c: bool = [(0, true), (1, false)]\nvar e: bool = [(0, false), (2, true)]\n");
  ctx.store = &later;
  EXPECT_EQ(verify_property(p, ctx).status, Status::Satisfied);
  auto missing = facts("var c: bool = [(0, false), (1, true)]\nvar e: bool = [(0, true), (2, false)]\n");
  ctx.store = &missing;
  auto v = verify_property(p, ctx);
  EXPECT_EQ(v.status, Status::Violated);
  ASSERT_FALSE(v.notes.empty());
  EXPECT_NE(v.notes[0].find("insufficient horizon"), std::string::npos);
}

TEST(Verify, InfluenceDirection) {
  auto onto = reference_ontology();
  auto up = knowledge("property I degree tactic kind influence(+) { causes { staff } effects { output } }", onto);
  auto down = knowledge("property I degree tactic kind influence(-) { causes { staff } effects { output } }", onto);
  auto s = facts("var staff: real = [(0, 3), (1, 5), (2, 5), (3, 4)]\n"
                 "var output: real = [(0, 10), (1, 12), (2, 40), (3, 9)]\n");
  VerificationContext ctx{nullptr, nullptr, &s, {}, 100};
  EXPECT_EQ(verify_property(up.properties[0], ctx).status, Status::Satisfied);
  auto v = verify_property(down.properties[0], ctx);
  EXPECT_EQ(v.status, Status::Violated);
  EXPECT_EQ(v.notes.size(), 2u);
}

TEST(Verify, EmergenceNeedsSaturation) {
  auto b = testing::load_fixtures({"membership.onto", "gh.cg", "r1.rules"});
  auto k = knowledge(R"(
    property Joins degree operational kind emergence {
      causes { }
      effects { zd }
      bind zd to graph { [Person: z] [Department: D] (member-of z D) }
    })", b.ontology);
  const auto& gh = b.find_graph("G_h")->graph;
  VerificationContext with{&gh, nullptr, &b.facts, b.rules, 100};
  EXPECT_EQ(verify_property(k.properties[0], with).status, Status::Satisfied);
  VerificationContext without{&gh, nullptr, &b.facts, {}, 100};
  EXPECT_EQ(verify_property(k.properties[0], without).status, Status::Violated);
  // Already-present effects are not emergent.
  auto gc = saturate(gh, b.rules, 100).graph;
  VerificationContext after{&gc, nullptr, &b.facts, b.rules, 100};
  EXPECT_EQ(verify_property(k.properties[0], after).status, Status::Violated);
}

// ---- reference matrix -------------------------------------------------------

TEST(Matrix, SeedCoversPerspectivesAndTypologies) {
  auto m = reference_matrix();
  std::set<std::string> perspectives;
  std::set<Typology> typologies;
  for (const auto& gp : m) {
    EXPECT_NO_THROW(validate(gp)) << gp.name;
    perspectives.insert(gp.perspectives.begin(), gp.perspectives.end());
    typologies.insert(gp.typology);
  }
  EXPECT_EQ(perspectives, (std::set<std::string>{"stability", "reliability", "integrity"}));
  EXPECT_EQ(typologies.size(), 3u);
}

TEST(Matrix, FilterByPerspectiveAndTypology) {
  auto m = reference_matrix();
  auto integrity = filter_matrix(m, std::string("integrity"), std::nullopt);
  std::size_t expected = 0;
  for (const auto& gp : m)
    expected += std::count(gp.perspectives.begin(), gp.perspectives.end(), "integrity");
  EXPECT_EQ(integrity.size(), expected);
  for (const auto* gp : integrity)
    EXPECT_NE(std::find(gp->perspectives.begin(), gp->perspectives.end(), "integrity"), gp->perspectives.end());
  auto axiomatic_integrity = filter_matrix(m, std::string("integrity"), Typology::Axiomatic);
  for (const auto* gp : axiomatic_integrity) EXPECT_EQ(gp->typology, Typology::Axiomatic);
  EXPECT_EQ(filter_matrix(m, std::nullopt, std::nullopt).size(), m.size());
}

const GenericProperty& entry(const std::vector<GenericProperty>& m, const std::string& name) {
  for (const auto& gp : m)
    if (gp.name == name) return gp;
  throw std::runtime_error("no entry " + name);
}

TEST(Instantiate, TransportForDrillAndPolish) {
  auto m = reference_matrix();
  auto onto = reference_ontology();
  TypeOracle types = [](std::string_view v) -> std::optional<std::string> {
    if (v == "drilling" || v == "polishing") return "Activity";
    return std::nullopt;
  };
  auto p = instantiate(entry(m, "transport_continuity"), {{"$from", "drilling"}, {"$to", "polishing"}}, types,
                       onto->concepts);
  EXPECT_NO_THROW(validate(p));
  const ConceptualGraph* handoff = p.pattern_for("handoff");
  ASSERT_TRUE(handoff);
  std::set<std::string> individuals;
  for (const auto& c : handoff->concepts())
    if (c.marker.is_individual()) individuals.insert(c.marker.name);
  EXPECT_EQ(individuals, (std::set<std::string>{"drilling", "polishing"}));

  auto fig5 = testing::load_fixtures({"fig5.model"});
  auto g5 = model_graph(fig5);
  VerificationContext ctx{&g5, nullptr, &fig5.facts, {}, 100};
  EXPECT_EQ(verify_property(p, ctx).status, Status::Violated);
  auto fig6 = testing::load_fixtures({"fig6.model"});
  auto g6 = model_graph(fig6);
  VerificationContext ctx6{&g6, nullptr, &fig6.facts, {}, 100};
  EXPECT_EQ(verify_property(p, ctx6).status, Status::Satisfied);
}

TEST(Instantiate, Errors) {
  auto m = reference_matrix();
  auto onto = reference_ontology();
  TypeOracle none = [](std::string_view) -> std::optional<std::string> { return std::nullopt; };
  const auto& tp = entry(m, "transport_continuity");
  EXPECT_EQ(code_of([&] { instantiate(tp, {{"$from", "drilling"}}, none, onto->concepts); }), "missing-binding");
  EXPECT_EQ(code_of([&] {
              instantiate(tp, {{"$from", "drilling"}, {"$to", "polishing"}, {"$what", "x"}}, none, onto->concepts);
            }),
            "unknown-placeholder");
  TypeOracle machines = [](std::string_view) -> std::optional<std::string> { return "Machine"; };
  EXPECT_EQ(code_of([&] { instantiate(tp, {{"$from", "drilling"}, {"$to", "polishing"}}, machines, onto->concepts); }),
            "type-violation");
  EXPECT_EQ(code_of([&] {
              instantiate(tp, {{"$from", "drilling:Resource"}, {"$to", "polishing"}}, none, onto->concepts);
            }),
            "type-violation");
}

TEST(Instantiate, OverlapAfterSubstitution) {
  auto k = knowledge(R"(
    generic Same perspective stability typology axiomatic {
      param $a: Universal;
      param $b: Universal;
      degree strategic kind implication { causes { $a } effects { $b } }
    })", reference_ontology());
  ASSERT_EQ(k.generics.size(), 1u);
  TypeOracle none = [](std::string_view) -> std::optional<std::string> { return std::nullopt; };
  const auto& lat = reference_ontology()->concepts;
  EXPECT_EQ(code_of([&] { instantiate(k.generics[0], {{"$a", "x"}, {"$b", "x"}}, none, lat); }),
            "cause-effect-overlap");
  auto p = instantiate(k.generics[0], {{"$a", "x"}, {"$b", "y"}}, none, lat);
  EXPECT_EQ(p.causes, std::vector<std::string>{"x"});
  EXPECT_EQ(p.effects, std::vector<std::string>{"y"});
}

TEST(Instantiate, NoPlaceholdersReturnsBody) {
  auto m = reference_matrix();
  for (const auto& gp : m) {
    if (!gp.placeholders.empty()) continue;
    auto p = instantiate(gp, {}, {}, reference_ontology()->concepts);
    std::string why;
    EXPECT_TRUE(testing::same(p, gp.body, &why)) << why;
  }
}

// ---- property graph ---------------------------------------------------------

Property simple(const std::string& name, std::vector<std::string> causes, std::vector<std::string> effects) {
  Property p;
  p.name = name;
  p.causes = std::move(causes);
  p.effects = std::move(effects);
  p.degree.level = "operational";
  return p;
}

TEST(PropertyGraph, PlaceSharesFactSets) {
  PropertyGraph pg;
  pg.place(simple("p1", {"a"}, {"b"}), {});
  EXPECT_EQ(pg.nodes().size(), 2u);
  pg.place(simple("p2", {"b"}, {"c"}), {});
  EXPECT_EQ(pg.nodes().size(), 3u);
  pg.place(simple("p3", {"a"}, {"c"}), {});
  EXPECT_EQ(pg.nodes().size(), 3u);
  EXPECT_EQ(pg.arcs().size(), 3u);
  for (const auto& a : pg.arcs()) {
    EXPECT_LT(a.from, pg.nodes().size());
    EXPECT_LT(a.to, pg.nodes().size());
  }
  EXPECT_EQ(code_of([&] { pg.place(simple("p1", {"x"}, {"y"}), {}); }), "duplicate-property");
}

TEST(PropertyGraph, EmptyReportIsSatisfied) {
  FactStore s;
  VerificationContext ctx{nullptr, nullptr, &s, {}, 100};
  auto r = check_property_graph(PropertyGraph{}, ctx);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_EQ(r.overall, Status::Satisfied);
}

TEST(PropertyGraph, TargetStrataAndTrustedReferences) {
  auto s = facts("param a: bool = true\nparam b: bool = true\nparam c: bool = false\ntrusted env\n");
  PropertyGraph pg;
  Coordinates upper;
  upper.target = Target::UpperReferent;
  pg.place(simple("process", {"a"}, {"b"}), {});
  pg.place(simple("env", {"a"}, {"c"}), upper);  // would fail, but is trusted
  VerificationContext ctx{nullptr, nullptr, &s, {}, 100};
  auto r = check_property_graph(pg, ctx);
  ASSERT_EQ(r.entries.size(), 2u);
  std::set<Target> targets;
  for (const auto& e : r.entries) targets.insert(e.coords.target);
  EXPECT_EQ(targets.size(), 2u);
  EXPECT_EQ(r.overall, Status::Satisfied);
  pg.place(simple("broken", {"a"}, {"nope"}), {});
  EXPECT_EQ(code_of([&] { check_property_graph(pg, ctx); }), "unresolved-fact");
}

TEST(PropertyGraph, Fig5AndFig6) {
  for (const auto& [model, want] : {std::pair{"fig5.model", Status::Violated}, {"fig6.model", Status::Satisfied}}) {
    auto b = testing::load_fixtures({model, "transport.prop", "energy.prop"});
    ASSERT_TRUE(b.ok());
    auto g = model_graph(b);
    VerificationContext ctx{&g, nullptr, &b.facts, {}, 100};
    auto r = check_property_graph(b.property_graph(), ctx);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.overall, want) << model;
    if (want == Status::Violated)
      for (const auto& e : r.entries) EXPECT_EQ(e.verdict.status, Status::Violated) << e.name;
  }
}

TEST(Coordinates, Text) {
  EXPECT_EQ(to_string(Coordinates{}), "referent model.structural present");
  Coordinates c{Target::UpperReferent, Scope::System, Aspect::Functional, Epoch::Future};
  EXPECT_EQ(to_string(c), "upper_referent system.functional future");
}

}  // namespace
}  // namespace cgvv
