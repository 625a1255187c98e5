#include <sstream>

#include "cgvv/reasoning.hpp"

namespace cgvv {

namespace {

void check_frontier(const ConceptualGraph& left, const ConceptualGraph& right,
                    const Frontier& frontier, const std::string& owner) {
  const auto& lat = left.lattices().concepts;
  for (const auto& [l, r] : frontier) {
    const ConceptNode* a = left.find_concept(l);
    const ConceptNode* b = right.find_concept(r);
    if (!a || !b)
      throw ReasoningError("invalid-frontier",
                           owner + ": frontier pair references a missing node");
    bool comparable = a->type == b->type;
    if (!comparable && lat.contains(a->type) && lat.contains(b->type))
      comparable = lat.is_subtype(a->type, b->type) || lat.is_subtype(b->type, a->type);
    if (!comparable)
      throw ReasoningError("invalid-frontier", owner + ": frontier nodes " + describe(*a) +
                                                   " and " + describe(*b) +
                                                   " have incomparable types");
  }
}

// Frontier pairs turned into fixed bindings on the right-hand graph. Returns
// false if two pairs pin the same node to different images.
bool pin(const Frontier& frontier, const Morphism& m, Bindings& out) {
  for (const auto& [l, r] : frontier) {
    const NodeId image = m.concept_map.at(l);
    auto [it, inserted] = out.emplace(r, image);
    if (!inserted && it->second != image) return false;
  }
  return true;
}

std::string label(const ConceptNode& c, bool pattern_side) {
  if (pattern_side && c.marker.is_coref()) return c.marker.name;
  if (c.marker.is_individual()) return c.marker.name;
  return "#" + std::to_string(c.id.value);
}

}  // namespace

const std::string& name_of(const Constraint& c) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, c);
}

void validate(const GraphRule& rule) {
  check_frontier(rule.hypothesis, rule.conclusion, rule.frontier, "rule " + rule.name);
}

void validate(const PositiveConstraint& pc) {
  if (pc.alternatives.empty())
    throw ReasoningError("no-alternatives",
                         "positive constraint " + pc.name + " has no mandatory graph");
  for (const auto& alt : pc.alternatives)
    check_frontier(pc.condition, alt.graph, alt.frontier, "constraint " + pc.name);
}

void validate(const NegativeConstraint& nc) {
  check_frontier(nc.condition, nc.mandatory, nc.frontier, "constraint " + nc.name);
}

std::string_view to_string(Status s) {
  return s == Status::Satisfied ? "Satisfied" : "Violated";
}

Verdict check_positive(const ConceptualGraph& g, const PositiveConstraint& pc) {
  validate(pc);
  Verdict v;
  v.witness_pattern = std::make_shared<const ConceptualGraph>(pc.condition);
  for (auto& pi : find_projections(pc.condition, g)) {
    bool extended = false;
    for (const auto& alt : pc.alternatives) {
      Bindings fixed;
      if (!pin(alt.frontier, pi, fixed)) continue;
      if (exists_projection(alt.graph, g, fixed)) {
        extended = true;
        break;
      }
    }
    if (!extended) v.witnesses.push_back(std::move(pi));
  }
  v.status = v.witnesses.empty() ? Status::Satisfied : Status::Violated;
  return v;
}

ConceptualGraph whole_pattern(const NegativeConstraint& nc) {
  return join(nc.condition, nc.mandatory, nc.frontier);
}

Verdict check_negative(const ConceptualGraph& g, const NegativeConstraint& nc) {
  validate(nc);
  Verdict v;
  auto whole = std::make_shared<const ConceptualGraph>(whole_pattern(nc));
  v.witnesses = find_projections(*whole, g);
  v.witness_pattern = std::move(whole);
  v.status = v.witnesses.empty() ? Status::Satisfied : Status::Violated;
  return v;
}

VerificationReport verify_all(const ConceptualGraph& g, std::span<const Constraint> constraints) {
  VerificationReport report;
  for (const auto& c : constraints) {
    ConstraintResult r;
    r.name = name_of(c);
    r.positive = std::holds_alternative<PositiveConstraint>(c);
    r.verdict = r.positive ? check_positive(g, std::get<PositiveConstraint>(c))
                           : check_negative(g, std::get<NegativeConstraint>(c));
    if (r.verdict.status == Status::Violated) report.overall = Status::Violated;
    report.entries.push_back(std::move(r));
  }
  return report;
}

std::string summarize(const ConceptualGraph& pattern, const ConceptualGraph& target,
                      const Morphism& m) {
  // Individual pattern nodes map to themselves; leave them out unless they
  // are all there is.
  bool any_variable = false;
  for (const auto& [p, t] : m.concept_map)
    if (!pattern.concept_at(p).marker.is_individual()) any_variable = true;
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, t] : m.concept_map) {
    const ConceptNode& pn = pattern.concept_at(p);
    if (any_variable && pn.marker.is_individual()) continue;
    if (!first) os << ',';
    first = false;
    os << label(pn, true) << '=' << label(target.concept_at(t), false);
  }
  return os.str();
}

}  // namespace cgvv
