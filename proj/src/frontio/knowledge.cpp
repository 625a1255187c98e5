#include <algorithm>

#include "cgvv/frontio.hpp"
#include "cgvv/frontio/lexer.hpp"
#include "cgvv/frontio/syntax.hpp"

namespace cgvv {

using frontio::Token;
using frontio::TokenKind;
using frontio::TokenStream;

namespace {

const std::initializer_list<std::string_view> kTopLevel = {
    "graph", "rule", "positive", "negative", "property", "generic", "place", "granularity"};

struct ParsedGraph {
  ConceptualGraph graph;
  std::map<NodeId, SourceLoc> node_locs;
  std::map<EdgeId, SourceLoc> edge_locs;
};

// Reads concept nodes and relations until the closing brace of the body
// (not consumed). Relation arguments are resolved once the whole body is
// known, so they may refer forward.
class BodyParser {
 public:
  BodyParser(TokenStream& ts, const OntologyPtr& onto) : ts_(ts), out_{ConceptualGraph(onto), {}, {}} {}

  /// Runs up to the closing `}`, or to end of input for a bare body.
  ParsedGraph run(bool bare = false) {
    while (!ts_.is_punct("}")) {
      if (ts_.at_end()) {
        if (bare) break;
        ts_.fail("syntax", "unterminated graph body");
      }
      if (ts_.is_punct("[")) {
        chain();
      } else if (ts_.is_punct("(")) {
        relation();
      } else {
        ts_.fail("syntax", "expected '[' or '(' in graph body but found " + describe(ts_.peek()));
      }
    }
    for (auto& p : pending_) {
      std::vector<NodeId> args;
      for (const auto& ref : p.refs) args.push_back(resolve(ref));
      out_.graph.insert_relation({p.id, p.type, std::move(args)});
      out_.edge_locs[p.id] = p.loc;
    }
    return std::move(out_);
  }

 private:
  struct Ref {
    Token tok;
    bool positional = false;
  };
  struct Pending {
    EdgeId id;
    std::string type;
    std::vector<Ref> refs;
    SourceLoc loc;
  };

  NodeId concept_node() {
    const SourceLoc loc = ts_.expect_punct("[").loc;
    std::string type = ts_.expect_name("a concept type");
    Marker marker;
    if (ts_.accept_punct(":")) {
      if (ts_.accept_punct("*")) {
        if (ts_.peek().kind == TokenKind::Identifier) marker = Marker::coref(ts_.next().text);
      } else {
        marker = Marker::individual(ts_.expect_atom("a marker"));
      }
    }
    ts_.expect_punct("]");
    NodeId id = out_.graph.add_concept(std::move(type), std::move(marker));
    out_.node_locs[id] = loc;
    return id;
  }

  std::string arrow_relation() {
    ts_.expect_punct("(");
    std::string r = ts_.expect_name("a relation type");
    ts_.expect_punct(")");
    return r;
  }

  void add_edge(std::string type, std::vector<NodeId> args, SourceLoc loc) {
    const EdgeId id{++edges_};
    out_.graph.insert_relation({id, std::move(type), std::move(args)});
    out_.edge_locs[id] = std::move(loc);
  }

  void chain() {
    NodeId cur = concept_node();
    while (true) {
      const SourceLoc loc = ts_.peek().loc;
      if (ts_.accept_punct("->")) {
        std::string r = arrow_relation();
        ts_.expect_punct("->");
        NodeId next = concept_node();
        add_edge(std::move(r), {cur, next}, loc);
        cur = next;
      } else if (ts_.accept_punct("<-")) {
        std::string r = arrow_relation();
        ts_.expect_punct("<-");
        NodeId next = concept_node();
        add_edge(std::move(r), {next, cur}, loc);
        cur = next;
      } else {
        return;
      }
    }
  }

  void relation() {
    const SourceLoc loc = ts_.expect_punct("(").loc;
    Pending p{EdgeId{++edges_}, ts_.expect_name("a relation type"), {}, loc};
    while (!ts_.accept_punct(")")) {
      if (ts_.accept_punct("@")) {
        const Token& n = ts_.peek();
        if (n.kind != TokenKind::Number) ts_.fail("syntax", "expected a position after '@'");
        p.refs.push_back({ts_.next(), true});
        continue;
      }
      const Token& tok = ts_.peek();
      ts_.expect_atom("a concept reference");
      p.refs.push_back({tok, false});
    }
    pending_.push_back(std::move(p));
  }

  NodeId resolve(const Ref& ref) {
    const auto nodes = out_.graph.concepts();
    if (ref.positional) {
      std::size_t pos = 0;
      try {
        pos = std::stoul(ref.tok.text);
      } catch (const std::exception&) {
      }
      if (pos < 1 || pos > nodes.size())
        ts_.fail_at(ref.tok, "unresolved-reference",
                    "no concept at position @" + ref.tok.text + " in this graph");
      return nodes[pos - 1].id;
    }
    for (const auto& c : nodes)
      if (c.marker.is_coref() && c.marker.name == ref.tok.text) return c.id;
    for (const auto& c : nodes)
      if (c.marker.is_individual() && c.marker.name == ref.tok.text) return c.id;
    ts_.fail_at(ref.tok, "unresolved-reference",
                "'" + ref.tok.text + "' names no concept in this graph");
  }

  TokenStream& ts_;
  ParsedGraph out_;
  std::vector<Pending> pending_;
  std::uint32_t edges_ = 0;
};

ParsedGraph block(TokenStream& ts, const OntologyPtr& onto) {
  ts.expect_punct("{");
  ParsedGraph g = BodyParser(ts, onto).run(true);
  ts.expect_punct("}");
  return g;
}

Frontier shared_corefs(const ConceptualGraph& a, const ConceptualGraph& b) {
  Frontier out;
  for (const auto& x : a.concepts())
    if (x.marker.is_coref())
      for (const auto& y : b.concepts())
        if (y.marker == x.marker) out.emplace_back(x.id, y.id);
  return out;
}

class KnowledgeParser {
 public:
  KnowledgeParser(TokenStream& ts, const OntologyPtr& onto, Knowledge& out)
      : ts_(ts), onto_(onto), out_(out) {}

  void item() {
    const Token& tok = ts_.peek();
    const SourceLoc loc = tok.loc;
    if (ts_.accept_keyword("graph")) {
      std::string name = ts_.expect_name("a graph name");
      ParsedGraph g = block(ts_, onto_);
      out_.locations[name] = loc;
      out_.graphs.push_back({std::move(name), std::move(g.graph), loc, std::move(g.node_locs),
                             std::move(g.edge_locs)});
    } else if (ts_.accept_keyword("rule")) {
      GraphRule r{ts_.expect_name("a rule name"), ConceptualGraph(onto_), ConceptualGraph(onto_), {}};
      ts_.expect_punct("{");
      ts_.expect_keyword("if");
      r.hypothesis = normalize_coref(block(ts_, onto_).graph);
      ts_.expect_keyword("then");
      r.conclusion = normalize_coref(block(ts_, onto_).graph);
      ts_.expect_punct("}");
      r.frontier = shared_corefs(r.hypothesis, r.conclusion);
      out_.locations[r.name] = loc;
      out_.rules.push_back(std::move(r));
    } else if (ts_.accept_keyword("positive")) {
      PositiveConstraint pc{ts_.expect_name("a constraint name"), ConceptualGraph(onto_), {}};
      ts_.expect_punct("{");
      ts_.expect_keyword("when");
      pc.condition = normalize_coref(block(ts_, onto_).graph);
      ts_.expect_keyword("require");
      do {
        ConceptualGraph alt = normalize_coref(block(ts_, onto_).graph);
        Frontier f = shared_corefs(pc.condition, alt);
        pc.alternatives.push_back({std::move(alt), std::move(f)});
      } while (ts_.accept_keyword("or"));
      ts_.expect_punct("}");
      out_.locations[pc.name] = loc;
      out_.constraints.emplace_back(std::move(pc));
    } else if (ts_.accept_keyword("negative")) {
      NegativeConstraint nc{ts_.expect_name("a constraint name"), ConceptualGraph(onto_),
                            ConceptualGraph(onto_), {}};
      ts_.expect_punct("{");
      ts_.expect_keyword("when");
      nc.condition = normalize_coref(block(ts_, onto_).graph);
      ts_.expect_keyword("forbid");
      nc.mandatory = normalize_coref(block(ts_, onto_).graph);
      ts_.expect_punct("}");
      nc.frontier = shared_corefs(nc.condition, nc.mandatory);
      out_.locations[nc.name] = loc;
      out_.constraints.emplace_back(std::move(nc));
    } else if (ts_.accept_keyword("property")) {
      Property p = property_tail(ts_.expect_name("a property name"));
      out_.locations[p.name] = loc;
      out_.properties.push_back(std::move(p));
    } else if (ts_.accept_keyword("generic")) {
      GenericProperty gp = generic();
      out_.locations[gp.name] = loc;
      out_.generics.push_back(std::move(gp));
    } else if (ts_.accept_keyword("place")) {
      PlacementDecl pd;
      pd.loc = loc;
      pd.property = ts_.expect_name("a property name");
      ts_.expect_keyword("at");
      pd.coords = coordinates();
      ts_.expect_punct(";");
      out_.placements.push_back(std::move(pd));
    } else if (ts_.accept_keyword("granularity")) {
      out_.granularities.push_back(granularity());
    } else {
      ts_.fail("syntax", "expected a declaration (graph, rule, positive, negative, property, "
                         "generic, place, granularity) but found " + describe(tok));
    }
  }

 private:
  std::vector<std::string> fact_list(ExprPtr& theta) {
    std::vector<std::string> facts;
    ts_.expect_punct("{");
    if (!ts_.is_punct("}") && !ts_.is_keyword("where")) {
      do facts.push_back(ts_.expect_name("a fact name"));
      while (ts_.accept_punct(","));
    }
    if (ts_.accept_keyword("where")) theta = frontio::parse_expr(ts_);
    ts_.expect_punct("}");
    return facts;
  }

  // After the property name: `degree L [(tag)] kind K { ... }`.
  Property property_tail(std::string name) {
    Property p;
    p.name = std::move(name);
    ts_.expect_keyword("degree");
    p.degree.level = ts_.expect_name("a degree");
    if (ts_.accept_punct("(")) {
      p.degree.tag = ts_.expect_name("a degree tag");
      ts_.expect_punct(")");
    }
    ts_.expect_keyword("kind");
    const Token& k = ts_.peek();
    const std::string kind = ts_.expect_name("a relation kind");
    if (kind == "implication") {
      p.relation.kind = RelationKind::Implication;
    } else if (kind == "equivalence") {
      p.relation.kind = RelationKind::Equivalence;
    } else if (kind == "temporal") {
      p.relation.kind = RelationKind::Temporal;
    } else if (kind == "emergence") {
      p.relation.kind = RelationKind::Emergence;
    } else if (kind == "influence") {
      p.relation.kind = RelationKind::Influence;
      ts_.expect_punct("(");
      if (ts_.accept_punct("+")) {
        p.relation.sense = Sense::Beneficial;
      } else if (ts_.accept_punct("-")) {
        p.relation.sense = Sense::Harmful;
      } else {
        ts_.fail("syntax", "expected '+' or '-' for the influence sense");
      }
      ts_.expect_punct(")");
    } else {
      ts_.fail_at(k, "syntax", "unknown relation kind '" + kind + "'");
    }
    ts_.expect_punct("{");
    ts_.expect_keyword("causes");
    p.causes = fact_list(p.relation.theta_c);
    ts_.expect_keyword("effects");
    p.effects = fact_list(p.relation.theta_e);
    while (ts_.accept_keyword("bind")) {
      PatternBinding b{ts_.expect_name("a fact name"), ConceptualGraph(onto_)};
      ts_.expect_keyword("to");
      ts_.expect_keyword("graph");
      b.pattern = block(ts_, onto_).graph;
      p.bindings.push_back(std::move(b));
    }
    if (ts_.accept_keyword("note")) {
      const Token& s = ts_.peek();
      if (s.kind != TokenKind::String) ts_.fail("syntax", "expected a quoted note");
      p.relation.d = ts_.next().text;
    }
    ts_.expect_punct("}");
    return p;
  }

  GenericProperty generic() {
    GenericProperty gp;
    gp.name = ts_.expect_name("a generic property name");
    if (ts_.accept_keyword("perspective")) {
      do gp.perspectives.push_back(ts_.expect_name("a perspective"));
      while (ts_.accept_punct(","));
    }
    ts_.expect_keyword("typology");
    const Token& t = ts_.peek();
    const std::string typology = ts_.expect_name("a typology");
    if (typology == "system") {
      gp.typology = Typology::System;
    } else if (typology == "language") {
      gp.typology = Typology::ModelingLanguage;
    } else if (typology == "axiomatic") {
      gp.typology = Typology::Axiomatic;
    } else {
      ts_.fail_at(t, "syntax", "unknown typology '" + typology + "' (system, language, axiomatic)");
    }
    ts_.expect_punct("{");
    ts_.allow_placeholders(true);
    while (ts_.accept_keyword("param")) {
      Placeholder ph;
      const Token& tok = ts_.peek();
      if (tok.kind != TokenKind::Placeholder) ts_.fail("syntax", "expected a $placeholder");
      ph.name = ts_.next().text;
      ts_.expect_punct(":");
      ph.type = ts_.expect_name("a concept type");
      ts_.expect_punct(";");
      gp.placeholders.push_back(std::move(ph));
    }
    gp.body = property_tail(gp.name);
    ts_.allow_placeholders(false);
    ts_.expect_punct("}");
    return gp;
  }

  Coordinates coordinates() {
    Coordinates c;
    const Token& t = ts_.peek();
    const std::string target = ts_.expect_name("a target level");
    if (target == "upper_referent") {
      c.target = Target::UpperReferent;
    } else if (target == "referent") {
      c.target = Target::Referent;
    } else if (target == "lower") {
      c.target = Target::Lower;
    } else {
      ts_.fail_at(t, "syntax", "unknown target '" + target + "' (upper_referent, referent, lower)");
    }
    const Token& ty = ts_.peek();
    const std::string typology = ts_.expect_name("a typology coordinate");
    const auto dot = typology.find('.');
    const std::string scope = typology.substr(0, dot);
    const std::string aspect = dot == std::string::npos ? "" : typology.substr(dot + 1);
    if (scope == "system") {
      c.scope = Scope::System;
    } else if (scope == "model") {
      c.scope = Scope::Model;
    } else {
      ts_.fail_at(ty, "syntax", "expected system.<aspect> or model.<aspect>");
    }
    if (aspect == "structural") {
      c.aspect = Aspect::Structural;
    } else if (aspect == "behavioral") {
      c.aspect = Aspect::Behavioral;
    } else if (aspect == "functional") {
      c.aspect = Aspect::Functional;
    } else {
      ts_.fail_at(ty, "syntax", "expected structural, behavioral or functional after '" + scope + ".'");
    }
    const Token& tm = ts_.peek();
    const std::string time = ts_.expect_name("a time coordinate");
    if (time == "past") {
      c.time = Epoch::Past;
    } else if (time == "present") {
      c.time = Epoch::Present;
    } else if (time == "future") {
      c.time = Epoch::Future;
    } else {
      ts_.fail_at(tm, "syntax", "unknown time '" + time + "' (past, present, future)");
    }
    return c;
  }

  Granularity granularity() {
    Granularity g;
    g.name = ts_.expect_name("a granularity name");
    ts_.expect_punct("{");
    if (!ts_.is_punct("}")) {
      do {
        Granularity::Degree d{ts_.expect_name("a degree"), ""};
        if (ts_.accept_punct("(")) {
          d.temporal = ts_.expect_atom("a temporal annotation");
          ts_.expect_punct(")");
        }
        g.degrees.push_back(std::move(d));
      } while (ts_.accept_punct(","));
    }
    ts_.expect_punct("}");
    return g;
  }

  TokenStream& ts_;
  const OntologyPtr& onto_;
  Knowledge& out_;
};

}  // namespace

Knowledge parse_knowledge(std::string_view text, const std::string& file, const OntologyPtr& onto,
                          std::vector<Diagnostic>& diags) {
  Knowledge out;
  std::vector<Token> tokens;
  try {
    tokens = frontio::tokenize(text, file);
  } catch (const ParseError& e) {
    diags.push_back({Diagnostic::Severity::Error, e.location(), e.code(), e.what()});
    return out;
  }
  TokenStream ts(std::move(tokens));
  KnowledgeParser parser(ts, onto, out);
  while (!ts.at_end()) {
    try {
      parser.item();
    } catch (const ParseError& e) {
      diags.push_back({Diagnostic::Severity::Error, e.location(), e.code(), e.what()});
      ts.allow_placeholders(false);
      ts.skip_to(kTopLevel);
    } catch (const Error& e) {
      diags.push_back({Diagnostic::Severity::Error, ts.peek().loc, e.code(), e.what()});
      ts.allow_placeholders(false);
      ts.skip_to(kTopLevel);
    }
  }
  return out;
}

ConceptualGraph parse_graph_body(std::string_view text, const OntologyPtr& onto,
                                 const std::string& file) {
  TokenStream ts(frontio::tokenize(text, file));
  ParsedGraph g = BodyParser(ts, onto).run(true);
  if (!ts.at_end()) ts.fail("syntax", "unexpected " + describe(ts.peek()) + " after graph body");
  return std::move(g.graph);
}

void parse_facts(std::string_view text, const std::string& file, FactStore& store,
                 std::vector<Diagnostic>& diags) {
  std::vector<Token> tokens;
  try {
    tokens = frontio::tokenize(text, file);
  } catch (const ParseError& e) {
    diags.push_back({Diagnostic::Severity::Error, e.location(), e.code(), e.what()});
    return;
  }
  TokenStream ts(std::move(tokens));
  while (!ts.at_end()) {
    const SourceLoc loc = ts.peek().loc;
    try {
      if (ts.accept_keyword("var")) {
        store.add(frontio::parse_variable(ts));
      } else if (ts.accept_keyword("param")) {
        ModelingParameter mp;
        mp.name = ts.expect_name("a parameter name");
        ts.expect_punct(":");
        mp.type = ts.expect_name("a type");
        ts.expect_punct("=");
        mp.value = frontio::parse_value(ts);
        store.add(std::move(mp));
      } else if (ts.accept_keyword("function")) {
        HandleFunction hf;
        hf.name = ts.expect_name("a function name");
        ts.expect_punct("(");
        if (!ts.is_punct(")")) {
          do hf.parameters.push_back(ts.expect_name("a parameter type"));
          while (ts.accept_punct(","));
        }
        ts.expect_punct(")");
        ts.expect_punct(":");
        hf.result = ts.expect_name("a result type");
        store.add(std::move(hf));
      } else if (ts.accept_keyword("trusted")) {
        store.add(PropertyRef{ts.expect_name("a property name")});
      } else {
        ts.fail("syntax", "expected var, param, function or trusted but found " + describe(ts.peek()));
      }
      ts.accept_punct(";");
    } catch (const ParseError& e) {
      diags.push_back({Diagnostic::Severity::Error, e.location(), e.code(), e.what()});
      ts.skip_to({"var", "param", "function", "trusted"});
    } catch (const Error& e) {
      // The statement parsed; only the store rejected it.
      diags.push_back({Diagnostic::Severity::Error, loc, e.code(), e.what()});
      ts.accept_punct(";");
    }
  }
}

}  // namespace cgvv
