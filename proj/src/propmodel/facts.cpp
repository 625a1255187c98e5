#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cgvv/facts.hpp"
#include "cgvv/text.hpp"

namespace cgvv {

Value Value::of_bool(bool b) {
  Value v;
  v.kind = Kind::Bool;
  v.boolean = b;
  return v;
}

Value Value::of_number(double d) {
  Value v;
  v.kind = Kind::Number;
  v.number = d;
  return v;
}

Value Value::of_symbol(std::string s) {
  Value v;
  v.kind = Kind::Symbol;
  v.symbol = std::move(s);
  return v;
}

Value Value::of_set(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Value v;
  v.kind = Kind::Set;
  v.set = std::move(items);
  return v;
}

namespace {

std::string format_number(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Bool:
      return v.boolean ? "true" : "false";
    case Value::Kind::Number:
      return format_number(v.number);
    case Value::Kind::Symbol:
      // Keep symbols that look like keywords or numbers distinguishable.
      if (v.symbol == "true" || v.symbol == "false") return quote(v.symbol);
      return quote_if_needed(v.symbol);
    case Value::Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < v.set.size(); ++i) {
        if (i) out += ", ";
        out += quote_if_needed(v.set[i]);
      }
      return out + "}";
    }
  }
  return "?";
}

std::string_view kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Bool:
      return "bool";
    case Value::Kind::Number:
      return "number";
    case Value::Kind::Symbol:
      return "symbol";
    case Value::Kind::Set:
      return "set";
  }
  return "?";
}

bool Domain::contains(const Value& v) const {
  switch (kind) {
    case Kind::Any:
      return true;
    case Kind::Range:
      return v.kind == Value::Kind::Number && v.number >= low && v.number <= high;
    case Kind::Enumeration:
      return v.kind == Value::Kind::Symbol &&
             std::find(symbols.begin(), symbols.end(), v.symbol) != symbols.end();
  }
  return false;
}

const std::string& name_of(const Fact& f) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, f);
}

void FactStore::add(Fact f) {
  const std::string& name = name_of(f);
  if (index_.count(name))
    throw PropertyError("duplicate-fact", "fact '" + name + "' declared twice");
  if (const auto* mv = std::get_if<ModelingVariable>(&f)) {
    for (std::size_t i = 0; i < mv->series.size(); ++i) {
      const auto& [t, v] = mv->series[i];
      if (i > 0 && !(mv->series[i - 1].first < t))
        throw PropertyError("unordered-series",
                            "time indices of '" + name + "' must be strictly increasing");
      if (!mv->def.contains(v))
        throw PropertyError("domain-violation", "value " + to_string(v) + " of '" + name +
                                                    "' at t=" + format_number(t) +
                                                    " lies outside its definition domain");
    }
    for (const auto& s : mv->def.symbols) symbols_.insert(s);
  }
  if (const auto* mp = std::get_if<ModelingParameter>(&f))
    if (mp->value.kind == Value::Kind::Symbol) symbols_.insert(mp->value.symbol);
  index_.emplace(name, facts_.size());
  facts_.push_back(std::move(f));
}

const Fact* FactStore::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &facts_[it->second];
}

std::vector<TimePoint> FactStore::times() const {
  std::vector<TimePoint> out;
  for (const auto& f : facts_)
    if (const auto* mv = std::get_if<ModelingVariable>(&f))
      for (const auto& [t, v] : mv->series) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Value value_at(const ModelingVariable& v, TimePoint t) {
  const std::pair<TimePoint, Value>* last = nullptr;
  for (const auto& p : v.series) {
    if (p.first > t) break;
    last = &p;
  }
  if (!last)
    throw PropertyError("missing-time-index",
                        "variable '" + v.name + "' has no value at t=" + format_number(t));
  return last->second;
}

// ---------------------------------------------------------------------------

namespace expr {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr literal(Value v) {
  Expr e;
  e.kind = Expr::Kind::Literal;
  e.value = std::move(v);
  return make(std::move(e));
}

ExprPtr name(std::string n) {
  Expr e;
  e.kind = Expr::Kind::Name;
  e.name = std::move(n);
  return make(std::move(e));
}

ExprPtr call(std::string fn, std::vector<ExprPtr> args) {
  Expr e;
  e.kind = Expr::Kind::Call;
  e.name = std::move(fn);
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr set(std::vector<ExprPtr> items) {
  Expr e;
  e.kind = Expr::Kind::SetLiteral;
  e.args = std::move(items);
  return make(std::move(e));
}

ExprPtr negate(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Not;
  e.args = {std::move(a)};
  return make(std::move(e));
}

ExprPtr conj(std::vector<ExprPtr> items) {
  if (items.empty()) return literal(Value::of_bool(true));
  if (items.size() == 1) return items.front();
  Expr e;
  e.kind = Expr::Kind::And;
  e.args = std::move(items);
  return make(std::move(e));
}

ExprPtr disj(std::vector<ExprPtr> items) {
  if (items.empty()) return literal(Value::of_bool(false));
  if (items.size() == 1) return items.front();
  Expr e;
  e.kind = Expr::Kind::Or;
  e.args = std::move(items);
  return make(std::move(e));
}

ExprPtr compare(std::string op, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = Expr::Kind::Compare;
  e.op = std::move(op);
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr arith(std::string op, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = Expr::Kind::Arith;
  e.op = std::move(op);
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr in(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = Expr::Kind::In;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

}  // namespace expr

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.op != b.op || a.name != b.name || !(a.value == b.value) ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

namespace {

// Binding strength; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or:
      return 1;
    case Expr::Kind::And:
      return 2;
    case Expr::Kind::Not:
      return 3;
    case Expr::Kind::Compare:
    case Expr::Kind::In:
      return 4;
    case Expr::Kind::Arith:
      return (e.op == "+" || e.op == "-") ? 5 : 6;
    default:
      return 7;
  }
}

void render(const Expr& e, std::ostream& os);

void render_operand(const Expr& e, int min_prec, std::ostream& os) {
  if (precedence(e) < min_prec) {
    os << '(';
    render(e, os);
    os << ')';
  } else {
    render(e, os);
  }
}

void render(const Expr& e, std::ostream& os) {
  const int p = precedence(e);
  switch (e.kind) {
    case Expr::Kind::Literal:
      // Bare identifiers are names, so symbol literals are always quoted.
      os << (e.value.kind == Value::Kind::Symbol ? quote(e.value.symbol) : to_string(e.value));
      return;
    case Expr::Kind::Name:
      os << e.name;
      return;
    case Expr::Kind::Call:
    case Expr::Kind::SetLiteral:
      os << (e.kind == Expr::Kind::Call ? e.name + "(" : "{");
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        render(*e.args[i], os);
      }
      os << (e.kind == Expr::Kind::Call ? ")" : "}");
      return;
    case Expr::Kind::Not:
      os << "not ";
      render_operand(*e.args[0], p, os);
      return;
    case Expr::Kind::And:
    case Expr::Kind::Or:
      // n-ary and associative; nested same-kind operands still get
      // parentheses so the tree shape survives a round trip.
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << (e.kind == Expr::Kind::And ? " and " : " or ");
        render_operand(*e.args[i], p + 1, os);
      }
      return;
    case Expr::Kind::Compare:
    case Expr::Kind::In:
      // Non-associative: both operands must bind tighter.
      render_operand(*e.args[0], p + 1, os);
      os << ' ' << (e.kind == Expr::Kind::In ? "in" : e.op) << ' ';
      render_operand(*e.args[1], p + 1, os);
      return;
    case Expr::Kind::Arith:
      // Left-associative.
      render_operand(*e.args[0], p, os);
      os << ' ' << e.op << ' ';
      render_operand(*e.args[1], p + 1, os);
      return;
  }
}

void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Name &&
      std::find(out.begin(), out.end(), e.name) == out.end())
    out.push_back(e.name);
  for (const auto& a : e.args) collect_names(*a, out);
}

[[noreturn]] void mismatch(const std::string& what, const Value& a) {
  throw PropertyError("type-mismatch",
                      what + " cannot be applied to a " + std::string(kind_name(a.kind)));
}

const Value& expect(const Value& v, Value::Kind k, const std::string& what) {
  if (v.kind != k) mismatch(what, v);
  return v;
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  render(e, os);
  return os.str();
}

std::vector<std::string> referenced_names(const Expr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

Value eval(const Expr& e, const FactStore& store, std::optional<TimePoint> t) {
  auto call_function = [&](const std::string& fn, std::span<const Value> args) {
    const Fact* f = store.find(fn);
    const auto* hf = f ? std::get_if<HandleFunction>(f) : nullptr;
    if (!hf) throw PropertyError("unknown-function", "'" + fn + "' is not a handle function");
    if (hf->parameters.size() != args.size())
      throw PropertyError("type-mismatch", "'" + fn + "' expects " +
                                               std::to_string(hf->parameters.size()) +
                                               " argument(s), got " + std::to_string(args.size()));
    if (!store.evaluator())
      throw PropertyError("unknown-function", "no evaluator registered for '" + fn + "'");
    return store.evaluator()(fn, args, t);
  };

  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.value;
    case Expr::Kind::Name: {
      if (const Fact* f = store.find(e.name)) {
        if (const auto* mv = std::get_if<ModelingVariable>(f)) {
          if (!t)
            throw PropertyError("missing-time-index",
                                "variable '" + e.name + "' needs a time index");
          return value_at(*mv, *t);
        }
        if (const auto* mp = std::get_if<ModelingParameter>(f)) return mp->value;
        if (std::holds_alternative<PropertyRef>(*f)) return Value::of_bool(true);
        return call_function(e.name, {});
      }
      if (store.is_symbol(e.name)) return Value::of_symbol(e.name);
      throw PropertyError("unknown-fact", "unknown fact '" + e.name + "'");
    }
    case Expr::Kind::Call: {
      std::vector<Value> args;
      for (const auto& a : e.args) args.push_back(eval(*a, store, t));
      return call_function(e.name, args);
    }
    case Expr::Kind::SetLiteral: {
      std::vector<std::string> items;
      for (const auto& a : e.args)
        items.push_back(expect(eval(*a, store, t), Value::Kind::Symbol, "a set literal").symbol);
      return Value::of_set(std::move(items));
    }
    case Expr::Kind::Not:
      return Value::of_bool(!expect(eval(*e.args[0], store, t), Value::Kind::Bool, "'not'").boolean);
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      // Short-circuit, left to right.
      const bool is_and = e.kind == Expr::Kind::And;
      for (const auto& a : e.args) {
        bool b = expect(eval(*a, store, t), Value::Kind::Bool, is_and ? "'and'" : "'or'").boolean;
        if (b != is_and) return Value::of_bool(b);
      }
      return Value::of_bool(is_and);
    }
    case Expr::Kind::Compare: {
      const Value a = eval(*e.args[0], store, t);
      const Value b = eval(*e.args[1], store, t);
      if (e.op == "=" || e.op == "!=") {
        if (a.kind != b.kind)
          throw PropertyError("type-mismatch", "cannot compare a " +
                                                   std::string(kind_name(a.kind)) + " with a " +
                                                   std::string(kind_name(b.kind)));
        return Value::of_bool((a == b) == (e.op == "="));
      }
      const double x = expect(a, Value::Kind::Number, "'" + e.op + "'").number;
      const double y = expect(b, Value::Kind::Number, "'" + e.op + "'").number;
      if (e.op == "<") return Value::of_bool(x < y);
      if (e.op == "<=") return Value::of_bool(x <= y);
      if (e.op == ">") return Value::of_bool(x > y);
      if (e.op == ">=") return Value::of_bool(x >= y);
      throw PropertyError("type-mismatch", "unknown comparison '" + e.op + "'");
    }
    case Expr::Kind::Arith: {
      const double x = expect(eval(*e.args[0], store, t), Value::Kind::Number, "'" + e.op + "'").number;
      const double y = expect(eval(*e.args[1], store, t), Value::Kind::Number, "'" + e.op + "'").number;
      if (e.op == "+") return Value::of_number(x + y);
      if (e.op == "-") return Value::of_number(x - y);
      if (e.op == "*") return Value::of_number(x * y);
      if (e.op == "/") {
        if (y == 0) throw PropertyError("division-by-zero", "division by zero");
        return Value::of_number(x / y);
      }
      throw PropertyError("type-mismatch", "unknown operator '" + e.op + "'");
    }
    case Expr::Kind::In: {
      const Value a = eval(*e.args[0], store, t);
      const Value b = eval(*e.args[1], store, t);
      const auto& sym = expect(a, Value::Kind::Symbol, "'in'").symbol;
      const auto& items = expect(b, Value::Kind::Set, "'in'").set;
      return Value::of_bool(std::binary_search(items.begin(), items.end(), sym));
    }
  }
  throw PropertyError("type-mismatch", "malformed expression");
}

bool eval_bool(const Expr& e, const FactStore& store, std::optional<TimePoint> t) {
  return expect(eval(e, store, t), Value::Kind::Bool, "a condition").boolean;
}

}  // namespace cgvv
