#include <algorithm>
#include <sstream>

#include "cgvv/reasoning.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

namespace {

std::string arg_label(const ConceptNode& c) {
  if (c.marker.is_individual()) return quote_if_needed(c.marker.name);
  return "#" + std::to_string(c.id.value);
}

// Fills `text` from whatever of `nodes`/`edges` survives in `g`.
void describe_fragment(const ConceptualGraph& g, AddedFragment& f) {
  std::erase_if(f.nodes, [&](NodeId n) { return !g.find_concept(n); });
  std::erase_if(f.edges, [&](EdgeId e) { return !g.find_relation(e); });
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ' ';
    first = false;
  };
  for (NodeId n : f.nodes) {
    const ConceptNode& c = g.concept_at(n);
    sep();
    os << describe(c);
    if (!c.marker.is_individual()) os << '#' << n.value;
  }
  for (EdgeId e : f.edges) {
    const RelationEdge& r = g.relation_at(e);
    sep();
    os << '(' << r.type;
    for (NodeId a : r.args) os << ' ' << arg_label(g.concept_at(a));
    os << ')';
  }
  f.text = os.str();
}

// Conclusion copy whose coreference variables become plain generics, so the
// rule's variable names never leak into the graph being extended.
ConceptualGraph strip_corefs(const ConceptualGraph& g) {
  ConceptualGraph out(g.ontology());
  for (auto c : g.concepts()) {
    if (c.marker.is_coref()) c.marker = Marker::generic();
    out.insert_concept(std::move(c));
  }
  for (const auto& r : g.relations()) out.insert_relation(r);
  return out;
}

bool joinable(const ConceptLattice& lat, const std::string& a, const std::string& b) {
  if (a == b) return true;
  if (!lat.contains(a) || !lat.contains(b)) return false;
  return !lat.max_common_subtypes(a, b).empty();
}

void require_bound(std::size_t bound, const char* what) {
  if (bound < 1) throw ReasoningError("invalid-bound", std::string(what) + " must be at least 1");
}

}  // namespace

Application apply_rule_traced(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m) {
  std::string why;
  if (!is_valid_projection(rule.hypothesis, g, m, &why))
    throw ReasoningError("invalid-morphism",
                         "not a projection of the hypothesis of " + rule.name + ": " + why);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> frontier_nodes;
  for (const auto& [h, c] : rule.frontier) {
    pairs.emplace_back(m.concept_map.at(h), c);
    frontier_nodes.push_back(c);
  }
  const auto& lat = g.lattices().concepts;
  for (const auto& c : rule.conclusion.concepts()) {
    if (!c.marker.is_individual()) continue;
    if (std::find(frontier_nodes.begin(), frontier_nodes.end(), c.id) != frontier_nodes.end())
      continue;
    for (const auto& existing : g.concepts()) {
      // A target already taken by another conclusion node stays out: the
      // two conclusion nodes need not be joinable with each other.
      const bool taken = std::any_of(pairs.begin(), pairs.end(),
                                     [&](const auto& p) { return p.first == existing.id; });
      if (!taken && existing.marker == c.marker && joinable(lat, existing.type, c.type)) {
        pairs.emplace_back(existing.id, c.id);
        break;
      }
    }
  }

  JoinResult joined = [&] {
    try {
      return join_with_map(g, strip_corefs(rule.conclusion), pairs);
    } catch (const GraphError& e) {
      throw ReasoningError("merge-conflict", "applying " + rule.name + ": " + e.what());
    }
  }();

  Application app{std::move(joined.graph), {}};
  app.fragment.rule = rule.name;
  for (const auto& c : app.graph.concepts())
    if (c.id > g.max_node_id()) app.fragment.nodes.push_back(c.id);
  for (const auto& r : app.graph.relations())
    if (r.id > g.max_edge_id()) app.fragment.edges.push_back(r.id);
  describe_fragment(app.graph, app.fragment);
  return app;
}

ConceptualGraph apply_rule_at(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m) {
  return apply_rule_traced(rule, g, m).graph;
}

bool application_redundant(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m) {
  Bindings fixed;
  for (const auto& [h, c] : rule.frontier) {
    auto [it, inserted] = fixed.emplace(c, m.concept_map.at(h));
    if (!inserted && it->second != m.concept_map.at(h)) return false;
  }
  return exists_projection(rule.conclusion, g, fixed);
}

namespace {

// One pass over all rules. `on_step` runs after each application and may
// return true to stop the pass early.
template <typename OnStep>
bool run_pass(ConceptualGraph& cur, std::span<const GraphRule> rules, OnStep on_step) {
  bool added = false;
  for (const auto& rule : rules) {
    for (const auto& m : find_projections(rule.hypothesis, cur)) {
      // Earlier applications in this pass may have merged nodes away.
      if (!is_valid_projection(rule.hypothesis, cur, m)) continue;
      if (application_redundant(rule, cur, m)) continue;
      Application app = apply_rule_traced(rule, cur, m);
      cur = simplify(app.graph);
      describe_fragment(cur, app.fragment);
      added = true;
      if (on_step(rule, m, std::move(app.fragment))) return true;
    }
  }
  return added;
}

}  // namespace

SaturationResult saturate(const ConceptualGraph& g, std::span<const GraphRule> rules,
                          std::size_t max_iterations) {
  require_bound(max_iterations, "iteration bound");
  for (const auto& r : rules) validate(r);
  SaturationResult result{g, {}};
  for (std::size_t pass = 1; pass <= max_iterations; ++pass) {
    result.report.iterations = pass;
    bool added = run_pass(result.graph, rules, [&](const GraphRule&, const Morphism&,
                                                   AddedFragment f) {
      result.report.added.push_back(std::move(f));
      return false;
    });
    if (!added) {
      result.report.reached_fixpoint = true;
      break;
    }
  }
  return result;
}

std::string_view to_string(ProofOutcome o) {
  switch (o) {
    case ProofOutcome::ContradictionEstablished:
      return "ContradictionEstablished";
    case ProofOutcome::NoContradiction:
      return "NoContradiction";
    case ProofOutcome::BoundReached:
      return "BoundReached";
  }
  return "?";
}

ProofResult prove_refutation(const ConceptualGraph& g, std::span<const GraphRule> rules,
                             std::span<const NegativeConstraint> negatives, std::size_t bound) {
  require_bound(bound, "proof bound");
  for (const auto& r : rules) validate(r);
  for (const auto& n : negatives) validate(n);

  ProofResult result;
  ConceptualGraph cur = g;
  auto violated = [&] {
    for (const auto& nc : negatives) {
      Verdict v = check_negative(cur, nc);
      if (v.status == Status::Violated) {
        result.outcome = ProofOutcome::ContradictionEstablished;
        result.violated_constraint = nc.name;
        result.violation = std::move(v);
        return true;
      }
    }
    return false;
  };
  auto finish = [&](ProofOutcome o) {
    if (!result.violated_constraint) result.outcome = o;
    result.final_graph = std::make_shared<const ConceptualGraph>(cur);
    return result;
  };

  if (violated()) return finish(result.outcome);
  for (std::size_t pass = 1; pass <= bound; ++pass) {
    result.passes = pass;
    bool stop = false;
    bool added = run_pass(cur, rules, [&](const GraphRule& rule, const Morphism& m,
                                         AddedFragment f) {
      result.trace.push_back({rule.name, m, std::move(f)});
      stop = violated();
      return stop;
    });
    if (stop) return finish(result.outcome);
    if (!added) return finish(ProofOutcome::NoContradiction);
  }
  return finish(ProofOutcome::BoundReached);
}

}  // namespace cgvv
