#include <algorithm>

#include "cgvv/projection.hpp"

namespace cgvv {

namespace {

bool concept_type_leq(const ConceptLattice& lat, const std::string& a, const std::string& b) {
  if (a == b) return true;
  if (!lat.contains(a) || !lat.contains(b)) return false;
  return lat.is_subtype(a, b);
}

bool relation_type_leq(const RelationLattice& lat, const std::string& a, const std::string& b) {
  if (a == b) return true;
  if (!lat.contains(a) || !lat.contains(b)) return false;
  return lat.is_subtype(a, b);
}

void check_same_lattices(const ConceptualGraph& pattern, const ConceptualGraph& target) {
  if (pattern.ontology() != target.ontology())
    throw ProjectionError("lattice-mismatch",
                          "pattern and target are governed by different ontologies");
}

class Search {
 public:
  Search(const ConceptualGraph& pattern, const ConceptualGraph& target, std::size_t limit)
      : pattern_(pattern), target_(target), limit_(limit) {}

  std::vector<Morphism> run(const Bindings& fixed) {
    if (limit_ == 0) return {};
    const auto& clat = pattern_.lattices().concepts;
    const auto& rlat = pattern_.lattices().relations;

    const auto pnodes = pattern_.concepts();
    const auto pedges = pattern_.relations();
    const auto tnodes = target_.concepts();
    const auto tedges = target_.relations();

    for (std::size_t i = 0; i < pnodes.size(); ++i) pindex_[pnodes[i].id] = i;
    for (std::size_t i = 0; i < tnodes.size(); ++i) tindex_[tnodes[i].id] = i;

    candidates_.resize(pnodes.size());
    for (std::size_t i = 0; i < pnodes.size(); ++i) {
      const auto& p = pnodes[i];
      auto fixed_it = fixed.find(p.id);
      for (std::size_t j = 0; j < tnodes.size(); ++j) {
        const auto& t = tnodes[j];
        if (fixed_it != fixed.end() && fixed_it->second != t.id) continue;
        if (concept_type_leq(clat, t.type, p.type) && marker_compatible(p.marker, t.marker))
          candidates_[i].push_back(j);
      }
      if (candidates_[i].empty()) return {};
    }
    for (const auto& [pid, tid] : fixed)
      if (!pindex_.count(pid))
        throw ProjectionError("unknown-node",
                              "binding for missing pattern node " + std::to_string(pid.value));

    edge_candidates_.resize(pedges.size());
    incident_.resize(pnodes.size());
    for (std::size_t e = 0; e < pedges.size(); ++e) {
      for (std::size_t f = 0; f < tedges.size(); ++f)
        if (tedges[f].args.size() == pedges[e].args.size() &&
            relation_type_leq(rlat, tedges[f].type, pedges[e].type))
          edge_candidates_[e].push_back(f);
      if (edge_candidates_[e].empty()) return {};
      for (NodeId a : pedges[e].args) {
        auto& inc = incident_[pindex_.at(a)];
        if (inc.empty() || inc.back() != e) inc.push_back(e);
      }
    }

    order_.resize(pnodes.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return candidates_[a].size() < candidates_[b].size();
    });

    image_.assign(pnodes.size(), kNone);
    assign(0);
    return std::move(results_);
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool done() const { return results_.size() >= limit_; }

  // Some candidate edge agrees with every argument assigned so far.
  bool edge_feasible(std::size_t e) const {
    const auto& pe = pattern_.relations()[e];
    const auto tedges = target_.relations();
    for (std::size_t f : edge_candidates_[e]) {
      const auto& te = tedges[f];
      bool ok = true;
      for (std::size_t k = 0; k < pe.args.size() && ok; ++k) {
        std::size_t img = image_[pindex_.at(pe.args[k])];
        if (img != kNone && target_.concepts()[img].id != te.args[k]) ok = false;
      }
      if (ok) return true;
    }
    return false;
  }

  void assign(std::size_t depth) {
    if (done()) return;
    if (depth == order_.size()) {
      emit_edges();
      return;
    }
    const std::size_t p = order_[depth];
    for (std::size_t t : candidates_[p]) {
      image_[p] = t;
      bool feasible = std::all_of(incident_[p].begin(), incident_[p].end(),
                                  [&](std::size_t e) { return edge_feasible(e); });
      if (feasible) assign(depth + 1);
      if (done()) break;
    }
    image_[p] = kNone;
  }

  void emit_edges() {
    const auto pedges = pattern_.relations();
    const auto tedges = target_.relations();
    std::vector<std::vector<std::size_t>> choices(pedges.size());
    for (std::size_t e = 0; e < pedges.size(); ++e) {
      for (std::size_t f : edge_candidates_[e]) {
        bool ok = true;
        for (std::size_t k = 0; k < pedges[e].args.size() && ok; ++k)
          ok = target_.concepts()[image_[pindex_.at(pedges[e].args[k])]].id == tedges[f].args[k];
        if (ok) choices[e].push_back(f);
      }
      if (choices[e].empty()) return;
    }
    Morphism base;
    for (std::size_t i = 0; i < image_.size(); ++i)
      base.concept_map[pattern_.concepts()[i].id] = target_.concepts()[image_[i]].id;

    std::vector<std::size_t> pick(pedges.size(), 0);
    while (!done()) {
      Morphism m = base;
      for (std::size_t e = 0; e < pedges.size(); ++e)
        m.relation_map[pedges[e].id] = tedges[choices[e][pick[e]]].id;
      results_.push_back(std::move(m));
      // Odometer over edge choices, last edge varying fastest.
      std::size_t e = pedges.size();
      while (e > 0) {
        --e;
        if (++pick[e] < choices[e].size()) break;
        pick[e] = 0;
        if (e == 0) return;
      }
      if (pedges.empty()) return;
    }
  }

  const ConceptualGraph& pattern_;
  const ConceptualGraph& target_;
  std::size_t limit_;
  std::map<NodeId, std::size_t> pindex_;
  std::map<NodeId, std::size_t> tindex_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::vector<std::size_t>> edge_candidates_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  std::vector<Morphism> results_;
};

}  // namespace

bool marker_compatible(const Marker& pattern, const Marker& target) {
  if (!pattern.is_individual()) return true;
  return target.is_individual() && target.name == pattern.name;
}

std::vector<Morphism> find_projections(const ConceptualGraph& pattern,
                                       const ConceptualGraph& target, std::size_t limit,
                                       const Bindings& fixed) {
  check_same_lattices(pattern, target);
  return Search(pattern, target, limit).run(fixed);
}

bool exists_projection(const ConceptualGraph& pattern, const ConceptualGraph& target,
                       const Bindings& fixed) {
  return !find_projections(pattern, target, 1, fixed).empty();
}

bool is_valid_projection(const ConceptualGraph& pattern, const ConceptualGraph& target,
                         const Morphism& m, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (pattern.ontology() != target.ontology()) return fail("lattice mismatch");
  const auto& clat = pattern.lattices().concepts;
  const auto& rlat = pattern.lattices().relations;

  if (m.concept_map.size() != pattern.concepts().size())
    return fail("concept map does not cover the pattern");
  for (const auto& c : pattern.concepts()) {
    auto it = m.concept_map.find(c.id);
    if (it == m.concept_map.end()) return fail("node " + describe(c) + " is unmapped");
    const auto* img = target.find_concept(it->second);
    if (!img) return fail("image of " + describe(c) + " is not a target node");
    if (!concept_type_leq(clat, img->type, c.type))
      return fail("type condition fails for " + describe(c) + " -> " + describe(*img));
    if (!marker_compatible(c.marker, img->marker))
      return fail("marker condition fails for " + describe(c) + " -> " + describe(*img));
  }
  if (m.relation_map.size() != pattern.relations().size())
    return fail("relation map does not cover the pattern");
  for (const auto& r : pattern.relations()) {
    auto it = m.relation_map.find(r.id);
    if (it == m.relation_map.end()) return fail("relation '" + r.type + "' is unmapped");
    const auto* img = target.find_relation(it->second);
    if (!img) return fail("image of relation '" + r.type + "' is not a target edge");
    if (!relation_type_leq(rlat, img->type, r.type))
      return fail("type condition fails for relation '" + r.type + "' -> '" + img->type + "'");
    if (img->args.size() != r.args.size())
      return fail("arity differs for relation '" + r.type + "'");
    for (std::size_t k = 0; k < r.args.size(); ++k)
      if (m.concept_map.at(r.args[k]) != img->args[k])
        return fail("structure condition fails for relation '" + r.type + "' argument " +
                    std::to_string(k + 1));
  }
  return true;
}

Morphism compose(const Morphism& first, const Morphism& second) {
  Morphism out;
  for (const auto& [a, b] : first.concept_map) out.concept_map[a] = second.concept_map.at(b);
  for (const auto& [a, b] : first.relation_map) out.relation_map[a] = second.relation_map.at(b);
  return out;
}

}  // namespace cgvv
