#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cgvv/cgraph.hpp"
#include "cgvv/projection.hpp"

namespace cgvv {

/// (hypothesis node, conclusion node) coreference pairs.
using Frontier = std::vector<std::pair<NodeId, NodeId>>;

/// "If the hypothesis projects into a graph, the conclusion can be added."
struct GraphRule {
  std::string name;
  ConceptualGraph hypothesis;
  ConceptualGraph conclusion;
  Frontier frontier;
};

/// One mandatory graph of a positive constraint, linked to the condition
/// through (condition node, alternative node) pairs.
struct Alternative {
  ConceptualGraph graph;
  Frontier frontier;
};

/// Every projection of the condition must extend to at least one alternative.
struct PositiveConstraint {
  std::string name;
  ConceptualGraph condition;
  std::vector<Alternative> alternatives;
};

/// No projection of the condition may extend to the mandatory graph.
struct NegativeConstraint {
  std::string name;
  ConceptualGraph condition;
  ConceptualGraph mandatory;
  Frontier frontier;
};

using Constraint = std::variant<PositiveConstraint, NegativeConstraint>;

const std::string& name_of(const Constraint& c);

/// Throws ReasoningError when frontier nodes are missing or their types are
/// not comparable.
void validate(const GraphRule& rule);
void validate(const PositiveConstraint& pc);
void validate(const NegativeConstraint& nc);

enum class Status { Satisfied, Violated };
std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::Satisfied;
  /// Condition projections that could not be extended (positive), or
  /// projections of the whole forbidden pattern (negative). Each one is a
  /// projection of `witness_pattern` into the checked graph.
  std::vector<Morphism> witnesses;
  std::shared_ptr<const ConceptualGraph> witness_pattern;
  /// Free-text evidence for verdicts that are not backed by a projection.
  std::vector<std::string> notes;
};

Verdict check_positive(const ConceptualGraph& g, const PositiveConstraint& pc);
Verdict check_negative(const ConceptualGraph& g, const NegativeConstraint& nc);

/// Condition and mandatory part joined along the frontier.
ConceptualGraph whole_pattern(const NegativeConstraint& nc);

struct ConstraintResult {
  std::string name;
  bool positive = true;
  Verdict verdict;
};

struct VerificationReport {
  std::vector<ConstraintResult> entries;
  Status overall = Status::Satisfied;
};

VerificationReport verify_all(const ConceptualGraph& g, std::span<const Constraint> constraints);

// ---------------------------------------------------------------------------
// Rules

struct AddedFragment {
  std::string rule;
  std::vector<NodeId> nodes;  // nodes created by the application
  std::vector<EdgeId> edges;  // edges created by the application
  std::string text;           // e.g. "(member-of z D)"
};

struct Application {
  ConceptualGraph graph;
  AddedFragment fragment;
};

/// Adds a fresh copy of the conclusion, merging each frontier node onto the
/// image of its hypothesis partner under `m`. Individual conclusion nodes
/// outside the frontier are merged onto an existing node carrying the same
/// individual when the types are joinable. Throws ReasoningError if `m` is
/// not a projection of the hypothesis.
ConceptualGraph apply_rule_at(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m);
Application apply_rule_traced(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m);

/// True when the conclusion, with frontier nodes pinned to their images
/// under `m`, already projects into `g`.
bool application_redundant(const GraphRule& rule, const ConceptualGraph& g, const Morphism& m);

struct SaturationReport {
  std::size_t iterations = 0;
  std::vector<AddedFragment> added;
  bool reached_fixpoint = false;
};

struct SaturationResult {
  ConceptualGraph graph;
  SaturationReport report;
};

/// Passes over all rules at all projections, skipping redundant
/// applications, until a pass adds nothing or `max_iterations` passes ran.
SaturationResult saturate(const ConceptualGraph& g, std::span<const GraphRule> rules,
                          std::size_t max_iterations);

// ---------------------------------------------------------------------------
// Refutation

enum class ProofOutcome { ContradictionEstablished, NoContradiction, BoundReached };
std::string_view to_string(ProofOutcome o);

struct ProofStep {
  std::string rule;
  Morphism binding;
  AddedFragment fragment;
};

struct ProofResult {
  ProofOutcome outcome = ProofOutcome::NoContradiction;
  std::vector<ProofStep> trace;
  std::optional<std::string> violated_constraint;
  std::optional<Verdict> violation;
  std::size_t passes = 0;
  std::shared_ptr<const ConceptualGraph> final_graph;
};

/// Saturates `g` while re-checking the negative constraints after every rule
/// application (and once before the first), stopping at the first violation.
ProofResult prove_refutation(const ConceptualGraph& g, std::span<const GraphRule> rules,
                             std::span<const NegativeConstraint> negatives, std::size_t bound);

// ---------------------------------------------------------------------------

/// "x=drill_station, y=#7": pattern nodes named by coreference variable or
/// individual (falling back to #id), images by individual or #id.
std::string summarize(const ConceptualGraph& pattern, const ConceptualGraph& target,
                      const Morphism& m);

}  // namespace cgvv
