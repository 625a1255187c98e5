#include "cgvv/frontio/syntax.hpp"

#include <charconv>
#include <sstream>

#include "cgvv/text.hpp"

namespace cgvv::frontio {

double parse_number(TokenStream& ts) {
  const bool negative = ts.accept_punct("-");
  const Token& tok = ts.peek();
  if (tok.kind != TokenKind::Number) ts.fail("syntax", "expected a number but found " + describe(tok));
  double d = 0;
  auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), d);
  if (res.ec != std::errc{}) ts.fail("invalid-number", "number out of range: " + tok.text);
  ts.next();
  return negative ? -d : d;
}

Value parse_value(TokenStream& ts) {
  const Token& tok = ts.peek();
  if (ts.is_punct("-") || tok.kind == TokenKind::Number) return Value::of_number(parse_number(ts));
  if (ts.accept_keyword("true")) return Value::of_bool(true);
  if (ts.accept_keyword("false")) return Value::of_bool(false);
  if (ts.accept_punct("{")) {
    std::vector<std::string> items;
    if (!ts.is_punct("}")) {
      do items.push_back(ts.expect_atom("a set element"));
      while (ts.accept_punct(","));
    }
    ts.expect_punct("}");
    return Value::of_set(std::move(items));
  }
  return Value::of_symbol(ts.expect_atom("a value"));
}

Domain parse_domain(TokenStream& ts) {
  Domain d;
  if (ts.accept_punct("[")) {
    d.kind = Domain::Kind::Range;
    d.low = parse_number(ts);
    ts.expect_punct(",");
    d.high = parse_number(ts);
    ts.expect_punct("]");
    if (d.low > d.high) ts.fail("invalid-domain", "empty range domain");
    return d;
  }
  ts.expect_punct("{");
  d.kind = Domain::Kind::Enumeration;
  do d.symbols.push_back(ts.expect_atom("a domain value"));
  while (ts.accept_punct(","));
  ts.expect_punct("}");
  return d;
}

std::vector<std::pair<TimePoint, Value>> parse_series(TokenStream& ts) {
  std::vector<std::pair<TimePoint, Value>> out;
  ts.expect_punct("[");
  if (!ts.is_punct("]")) {
    do {
      ts.expect_punct("(");
      const double t = parse_number(ts);
      ts.expect_punct(",");
      Value v = parse_value(ts);
      ts.expect_punct(")");
      out.emplace_back(t, std::move(v));
    } while (ts.accept_punct(","));
  }
  ts.expect_punct("]");
  return out;
}

ModelingVariable parse_variable(TokenStream& ts) {
  ModelingVariable v;
  v.name = ts.expect_name("a variable name");
  ts.expect_punct(":");
  v.type = ts.expect_name("a type");
  if (ts.accept_keyword("in")) v.def = parse_domain(ts);
  ts.expect_punct("=");
  v.series = parse_series(ts);
  return v;
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

bool is_reserved(std::string_view s) {
  return s == "and" || s == "or" || s == "not" || s == "in" || s == "true" || s == "false" ||
         s == "where";
}

ExprPtr parse_or(TokenStream& ts);

ExprPtr parse_primary(TokenStream& ts) {
  const Token& tok = ts.peek();
  if (tok.kind == TokenKind::Number) return expr::literal(Value::of_number(parse_number(ts)));
  if (tok.kind == TokenKind::String) return expr::literal(Value::of_symbol(ts.next().text));
  if (ts.accept_keyword("true")) return expr::literal(Value::of_bool(true));
  if (ts.accept_keyword("false")) return expr::literal(Value::of_bool(false));
  if (ts.accept_punct("(")) {
    ExprPtr e = parse_or(ts);
    ts.expect_punct(")");
    return e;
  }
  if (ts.accept_punct("{")) {
    std::vector<ExprPtr> items;
    if (!ts.is_punct("}")) {
      do items.push_back(parse_or(ts));
      while (ts.accept_punct(","));
    }
    ts.expect_punct("}");
    return expr::set(std::move(items));
  }
  if (tok.kind == TokenKind::Identifier && is_reserved(tok.text))
    ts.fail("syntax", "unexpected keyword '" + tok.text + "' in expression");
  std::string name = ts.expect_name("an expression");
  if (ts.accept_punct("(")) {
    std::vector<ExprPtr> args;
    if (!ts.is_punct(")")) {
      do args.push_back(parse_or(ts));
      while (ts.accept_punct(","));
    }
    ts.expect_punct(")");
    return expr::call(std::move(name), std::move(args));
  }
  return expr::name(std::move(name));
}

ExprPtr parse_unary(TokenStream& ts) {
  if (ts.is_punct("-")) {
    if (ts.peek(1).kind == TokenKind::Number) return expr::literal(Value::of_number(parse_number(ts)));
    ts.next();
    return expr::arith("-", expr::literal(Value::of_number(0)), parse_unary(ts));
  }
  return parse_primary(ts);
}

ExprPtr parse_mul(TokenStream& ts) {
  ExprPtr e = parse_unary(ts);
  while (ts.is_punct("*") || ts.is_punct("/")) {
    std::string op = ts.next().text;
    e = expr::arith(op, e, parse_unary(ts));
  }
  return e;
}

ExprPtr parse_add(TokenStream& ts) {
  ExprPtr e = parse_mul(ts);
  while (ts.is_punct("+") || ts.is_punct("-")) {
    std::string op = ts.next().text;
    e = expr::arith(op, e, parse_mul(ts));
  }
  return e;
}

ExprPtr parse_cmp(TokenStream& ts) {
  ExprPtr e = parse_add(ts);
  for (const char* op : {"=", "!=", "<=", ">=", "<", ">"}) {
    if (ts.accept_punct(op)) return expr::compare(op, e, parse_add(ts));
  }
  if (ts.accept_keyword("in")) return expr::in(e, parse_add(ts));
  return e;
}

ExprPtr parse_not(TokenStream& ts) {
  if (ts.accept_keyword("not")) return expr::negate(parse_not(ts));
  return parse_cmp(ts);
}

ExprPtr parse_and(TokenStream& ts) {
  std::vector<ExprPtr> items{parse_not(ts)};
  while (ts.accept_keyword("and")) items.push_back(parse_not(ts));
  if (items.size() == 1) return items.front();
  Expr e;
  e.kind = Expr::Kind::And;
  e.args = std::move(items);
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr parse_or(TokenStream& ts) {
  std::vector<ExprPtr> items{parse_and(ts)};
  while (ts.accept_keyword("or")) items.push_back(parse_and(ts));
  if (items.size() == 1) return items.front();
  Expr e;
  e.kind = Expr::Kind::Or;
  e.args = std::move(items);
  return std::make_shared<const Expr>(std::move(e));
}

}  // namespace

ExprPtr parse_expr(TokenStream& ts) { return parse_or(ts); }

// ---------------------------------------------------------------------------

std::string render_number(double d) { return to_string(Value::of_number(d)); }

std::string render_domain(const Domain& d) {
  switch (d.kind) {
    case Domain::Kind::Any:
      return "";
    case Domain::Kind::Range:
      return "[" + render_number(d.low) + ", " + render_number(d.high) + "]";
    case Domain::Kind::Enumeration: {
      std::string out = "{";
      for (std::size_t i = 0; i < d.symbols.size(); ++i)
        out += (i ? ", " : "") + quote_if_needed(d.symbols[i]);
      return out + "}";
    }
  }
  return "";
}

std::string render_variable(const ModelingVariable& v, const std::string& name) {
  std::ostringstream os;
  os << "var " << name << ": " << v.type;
  if (v.def.kind != Domain::Kind::Any) os << " in " << render_domain(v.def);
  os << " = [";
  for (std::size_t i = 0; i < v.series.size(); ++i)
    os << (i ? ", " : "") << '(' << render_number(v.series[i].first) << ", "
       << to_string(v.series[i].second) << ')';
  os << ']';
  return os.str();
}

}  // namespace cgvv::frontio
