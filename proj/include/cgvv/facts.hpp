#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cgvv/error.hpp"

namespace cgvv {

/// Runtime value of a fact or expression. Sets hold symbols only.
struct Value {
  enum class Kind { Bool, Number, Symbol, Set };

  Kind kind = Kind::Bool;
  bool boolean = false;
  double number = 0;
  std::string symbol;
  std::vector<std::string> set;  // sorted, unique

  static Value of_bool(bool b);
  static Value of_number(double d);
  static Value of_symbol(std::string s);
  static Value of_set(std::vector<std::string> items);

  bool operator==(const Value&) const = default;
};

std::string to_string(const Value& v);
std::string_view kind_name(Value::Kind k);

/// Definition domain of a modeling variable.
struct Domain {
  enum class Kind { Any, Range, Enumeration };

  Kind kind = Kind::Any;
  double low = 0;
  double high = 0;
  std::vector<std::string> symbols;

  bool contains(const Value& v) const;
  bool operator==(const Domain&) const = default;
};

using TimePoint = double;

struct ModelingVariable {
  std::string name;
  std::string type;
  Domain def;
  std::vector<std::pair<TimePoint, Value>> series;  // strictly increasing times

  bool operator==(const ModelingVariable&) const = default;
};

struct ModelingParameter {
  std::string name;
  std::string type;
  Value value;

  bool operator==(const ModelingParameter&) const = default;
};

struct HandleFunction {
  std::string name;
  std::vector<std::string> parameters;  // parameter type tags
  std::string result;

  bool operator==(const HandleFunction&) const = default;
};

/// Reference to an existing property the user trusts; evaluates to true.
struct PropertyRef {
  std::string name;

  bool operator==(const PropertyRef&) const = default;
};

using Fact = std::variant<ModelingVariable, ModelingParameter, HandleFunction, PropertyRef>;

const std::string& name_of(const Fact& f);

/// Evaluates handle function `name` on already-evaluated arguments.
using FunctionEvaluator = std::function<Value(const std::string& name, std::span<const Value> args,
                                              std::optional<TimePoint> t)>;

/// F = MV ∪ MP ∪ HF ∪ P. Names are unique across all four kinds, so the
/// subsets are disjoint by construction.
class FactStore {
 public:
  /// Throws PropertyError: duplicate-fact, or domain-violation when a
  /// variable value lies outside its definition domain.
  void add(Fact f);

  const Fact* find(std::string_view name) const;
  const std::vector<Fact>& facts() const { return facts_; }
  bool empty() const { return facts_.empty(); }

  /// Bare names that evaluate to themselves (entity ids, enumeration values).
  void add_symbol(std::string s) { symbols_.insert(std::move(s)); }
  bool is_symbol(std::string_view s) const { return symbols_.find(s) != symbols_.end(); }
  const std::set<std::string, std::less<>>& symbols() const { return symbols_; }

  void set_evaluator(FunctionEvaluator f) { evaluator_ = std::move(f); }
  const FunctionEvaluator& evaluator() const { return evaluator_; }

  /// Union of all variable time indices, ascending.
  std::vector<TimePoint> times() const;

 private:
  std::vector<Fact> facts_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::set<std::string, std::less<>> symbols_;
  FunctionEvaluator evaluator_;
};

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Name, Call, SetLiteral, Not, And, Or, Compare, Arith, In };

  Kind kind = Kind::Literal;
  std::string op;    // Compare: = != < <= > >=; Arith: + - * /
  std::string name;  // Name, Call
  Value value;       // Literal
  std::vector<ExprPtr> args;
};

namespace expr {
ExprPtr literal(Value v);
ExprPtr name(std::string n);
ExprPtr call(std::string fn, std::vector<ExprPtr> args);
ExprPtr set(std::vector<ExprPtr> items);
ExprPtr negate(ExprPtr e);
ExprPtr conj(std::vector<ExprPtr> items);  // empty -> true
ExprPtr disj(std::vector<ExprPtr> items);  // empty -> false
ExprPtr compare(std::string op, ExprPtr a, ExprPtr b);
ExprPtr arith(std::string op, ExprPtr a, ExprPtr b);
ExprPtr in(ExprPtr a, ExprPtr b);
}  // namespace expr

bool equal(const Expr& a, const Expr& b);

/// Minimal-parenthesis rendering in the property-file syntax.
std::string to_string(const Expr& e);

/// Names used as variables (not function names), in first-use order.
std::vector<std::string> referenced_names(const Expr& e);

/// Names resolve to facts first, then to store symbols. Throws
/// PropertyError: unknown-fact, type-mismatch, missing-time-index,
/// unknown-function.
Value eval(const Expr& e, const FactStore& store, std::optional<TimePoint> t = std::nullopt);
bool eval_bool(const Expr& e, const FactStore& store, std::optional<TimePoint> t = std::nullopt);

/// Piecewise-constant value of a variable at `t`.
Value value_at(const ModelingVariable& v, TimePoint t);

}  // namespace cgvv
