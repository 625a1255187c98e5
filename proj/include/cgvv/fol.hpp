#pragma once

#include <string>
#include <vector>

#include "cgvv/cgraph.hpp"

namespace cgvv {

struct Term {
  bool variable = false;
  std::string name;

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> terms;
  bool relation = false;  // false: unary concept-type atom

  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

/// Existentially closed conjunction of atoms.
struct Formula {
  std::vector<std::string> variables;
  std::vector<Atom> atoms;

  bool operator==(const Formula&) const = default;
};

/// Φ: one unary atom per concept node (node id order), then one atom per
/// relation edge (edge id order). Generic and coreference nodes become
/// variables x1, x2, ... (skipping names already used by constants).
/// Coreference variables are merged first.
Formula phi_translate(const ConceptualGraph& g);

/// `exists x1, x2. Employee(James) & Part(x1) & ...`, or `true` when empty.
std::string render(const Formula& f);

/// Evaluates `query` in the canonical model of `model`: the domain is the
/// model's terms, and an atom holds when the model has an atom on the same
/// terms whose predicate is a subtype of the queried one. Query constants
/// denote themselves. Brute-force over assignments; for small formulas.
bool holds_in_canonical_model(const Formula& model, const Formula& query, const Ontology& onto);

}  // namespace cgvv
