#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "cgvv/cgraph.hpp"

namespace cgvv {

/// A graph morphism from a pattern into a target. Not necessarily
/// injective: two pattern nodes may share an image.
struct Morphism {
  std::map<NodeId, NodeId> concept_map;
  std::map<EdgeId, EdgeId> relation_map;

  auto operator<=>(const Morphism&) const = default;
  bool operator==(const Morphism&) const = default;
};

/// Pattern node -> target node assignments fixed before the search starts.
using Bindings = std::map<NodeId, NodeId>;

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Every projection of `pattern` into `target` (up to `limit`), in a
/// deterministic order: backtracking over pattern nodes sorted by their
/// number of candidate images, candidates in ascending target id, then
/// relation images in ascending edge id. The empty pattern has exactly one
/// (empty) projection. Throws ProjectionError on lattice mismatch.
std::vector<Morphism> find_projections(const ConceptualGraph& pattern,
                                       const ConceptualGraph& target,
                                       std::size_t limit = kUnbounded,
                                       const Bindings& fixed = {});

bool exists_projection(const ConceptualGraph& pattern, const ConceptualGraph& target,
                       const Bindings& fixed = {});

/// Checks the type, marker and structure conditions. On failure, `why` (if
/// given) receives a one-line explanation.
bool is_valid_projection(const ConceptualGraph& pattern, const ConceptualGraph& target,
                         const Morphism& m, std::string* why = nullptr);

/// `second` after `first`: G -first-> H -second-> K gives G -> K.
Morphism compose(const Morphism& first, const Morphism& second);

/// Marker condition: individuals only onto the same individual; generic and
/// coreference markers onto anything.
bool marker_compatible(const Marker& pattern, const Marker& target);

}  // namespace cgvv
