#include <algorithm>
#include <sstream>

#include "cgvv/ontology.hpp"

namespace cgvv {

namespace {

// Reflexive-transitive closure of a parent relation; throws on cycles with
// the offending path in the message.
std::vector<std::vector<bool>> closure(const std::vector<std::string>& names,
                                       const std::vector<std::vector<std::size_t>>& parents,
                                       std::string_view what) {
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::size_t> stack;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    mark[v] = Mark::Grey;
    stack.push_back(v);
    leq[v][v] = true;
    for (std::size_t p : parents[v]) {
      if (mark[p] == Mark::Grey) {
        auto start = std::find(stack.begin(), stack.end(), p);
        std::ostringstream os;
        os << what << " hierarchy cycle: ";
        for (auto it = start; it != stack.end(); ++it) os << names[*it] << " < ";
        os << names[p];
        throw OntologyError("cycle", os.str(), names[v]);
      }
      if (mark[p] == Mark::White) visit(p);
      for (std::size_t j = 0; j < n; ++j)
        if (leq[p][j]) leq[v][j] = true;
    }
    stack.pop_back();
    mark[v] = Mark::Black;
  };
  for (std::size_t v = 0; v < n; ++v)
    if (mark[v] == Mark::White) visit(v);
  return leq;
}

}  // namespace

// ---------------------------------------------------------------------------

ConceptLattice::ConceptLattice() {
  names_.emplace_back(kUniversalType);
  index_.emplace(std::string(kUniversalType), 0);
  parents_.emplace_back();
  leq_ = {{true}};
}

ConceptLattice ConceptLattice::build(const std::vector<ConceptDecl>& decls) {
  ConceptLattice lat;
  for (const auto& d : decls) {
    if (d.name == kUniversalType) {
      if (!d.parents.empty())
        throw OntologyError("top-has-parent", "the universal type cannot have a parent", d.name);
      continue;
    }
    if (lat.index_.count(d.name))
      throw OntologyError("duplicate-type", "concept type '" + d.name + "' declared twice",
                          d.name);
    lat.index_.emplace(d.name, lat.names_.size());
    lat.names_.push_back(d.name);
  }
  lat.parents_.assign(lat.names_.size(), {});
  for (const auto& d : decls) {
    if (d.name == kUniversalType) continue;
    auto& ps = lat.parents_[lat.index_.at(d.name)];
    if (d.parents.empty()) {
      ps.push_back(0);
      continue;
    }
    for (const auto& p : d.parents) {
      auto it = lat.index_.find(p);
      if (it == lat.index_.end())
        throw OntologyError("unknown-type",
                            "concept type '" + d.name + "' has unknown parent '" + p + "'", d.name);
      if (std::find(ps.begin(), ps.end(), it->second) == ps.end()) ps.push_back(it->second);
    }
  }
  lat.leq_ = closure(lat.names_, lat.parents_, "concept");
  return lat;
}

bool ConceptLattice::contains(std::string_view type) const {
  return index_.find(type) != index_.end();
}

std::size_t ConceptLattice::index_of(std::string_view type) const {
  auto it = index_.find(type);
  if (it == index_.end())
    throw OntologyError("unknown-type", "unknown concept type '" + std::string(type) + "'");
  return it->second;
}

std::vector<std::string> ConceptLattice::parents(std::string_view type) const {
  std::vector<std::string> out;
  for (std::size_t p : parents_[index_of(type)]) out.push_back(names_[p]);
  return out;
}

std::vector<std::pair<std::string, std::string>> ConceptLattice::subtype_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t c = 0; c < names_.size(); ++c)
    for (std::size_t p : parents_[c]) out.emplace_back(names_[c], names_[p]);
  return out;
}

bool ConceptLattice::is_subtype(std::string_view a, std::string_view b) const {
  return leq_[index_of(a)][index_of(b)];
}

std::vector<std::string> ConceptLattice::max_common_subtypes(std::string_view a,
                                                             std::string_view b) const {
  const std::size_t ia = index_of(a);
  const std::size_t ib = index_of(b);
  std::vector<std::size_t> common;
  for (std::size_t t = 0; t < names_.size(); ++t)
    if (leq_[t][ia] && leq_[t][ib]) common.push_back(t);
  std::vector<std::string> out;
  for (std::size_t t : common) {
    bool maximal = std::none_of(common.begin(), common.end(),
                                [&](std::size_t u) { return u != t && leq_[t][u]; });
    if (maximal) out.push_back(names_[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

RelationLattice RelationLattice::build(const std::vector<RelationDecl>& decls,
                                       const ConceptLattice& concepts) {
  RelationLattice lat;
  for (const auto& d : decls) {
    if (lat.index_.count(d.name))
      throw OntologyError("duplicate-relation", "relation '" + d.name + "' declared twice",
                          d.name);
    if (d.signature.empty())
      throw OntologyError("empty-signature", "relation '" + d.name + "' has no arguments", d.name);
    for (const auto& t : d.signature)
      if (!concepts.contains(t))
        throw OntologyError("unknown-type", "relation '" + d.name +
                                                "' uses unknown concept type '" + t + "'",
                            d.name);
    lat.index_.emplace(d.name, lat.names_.size());
    lat.names_.push_back(d.name);
    lat.signatures_.push_back(d.signature);
  }
  lat.parents_.assign(lat.names_.size(), {});
  for (const auto& d : decls) {
    const std::size_t self = lat.index_.at(d.name);
    for (const auto& p : d.parents) {
      auto it = lat.index_.find(p);
      if (it == lat.index_.end())
        throw OntologyError("unknown-relation",
                            "relation '" + d.name + "' has unknown parent '" + p + "'", d.name);
      const auto& child_sig = lat.signatures_[self];
      const auto& parent_sig = lat.signatures_[it->second];
      if (child_sig.size() != parent_sig.size())
        throw OntologyError("arity-mismatch", "relation '" + d.name + "' and parent '" + p +
                                                  "' differ in arity", d.name);
      for (std::size_t i = 0; i < child_sig.size(); ++i)
        if (!concepts.is_subtype(child_sig[i], parent_sig[i]))
          throw OntologyError("signature-violation",
                              "relation '" + d.name + "' argument " + std::to_string(i + 1) +
                                  " (" + child_sig[i] + ") is not a subtype of '" + p +
                                  "' argument (" + parent_sig[i] + ")",
                              d.name);
      lat.parents_[self].push_back(it->second);
    }
  }
  lat.leq_ = closure(lat.names_, lat.parents_, "relation");
  return lat;
}

bool RelationLattice::contains(std::string_view rel) const {
  return index_.find(rel) != index_.end();
}

std::size_t RelationLattice::index_of(std::string_view rel) const {
  auto it = index_.find(rel);
  if (it == index_.end())
    throw OntologyError("unknown-relation", "unknown relation '" + std::string(rel) + "'");
  return it->second;
}

const std::vector<std::string>& RelationLattice::signature(std::string_view rel) const {
  return signatures_[index_of(rel)];
}

std::vector<std::string> RelationLattice::parents(std::string_view rel) const {
  std::vector<std::string> out;
  for (std::size_t p : parents_[index_of(rel)]) out.push_back(names_[p]);
  return out;
}

std::vector<std::pair<std::string, std::string>> RelationLattice::subtype_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t c = 0; c < names_.size(); ++c)
    for (std::size_t p : parents_[c]) out.emplace_back(names_[c], names_[p]);
  return out;
}

bool RelationLattice::is_subtype(std::string_view a, std::string_view b) const {
  return leq_[index_of(a)][index_of(b)];
}

}  // namespace cgvv
