#pragma once

// Grammar fragments shared by the fact, model and knowledge parsers.

#include <string>
#include <vector>

#include "cgvv/facts.hpp"
#include "cgvv/frontio/lexer.hpp"

namespace cgvv::frontio {

/// Number (optionally negative), `true`/`false`, identifier or string
/// (symbol), or `{a, b}` (set of symbols).
Value parse_value(TokenStream& ts);

/// `[low, high]` or `{A, B, ...}`.
Domain parse_domain(TokenStream& ts);

/// `[(t0, v0), (t1, v1), ...]`
std::vector<std::pair<TimePoint, Value>> parse_series(TokenStream& ts);

/// After the `var` keyword: `name: type [in domain] = series`.
ModelingVariable parse_variable(TokenStream& ts);

double parse_number(TokenStream& ts);

/// Full boolean/arithmetic expression; see `to_string(const Expr&)` for the
/// inverse.
ExprPtr parse_expr(TokenStream& ts);

std::string render_number(double d);
std::string render_domain(const Domain& d);
/// `var name: type [in domain] = [...]` without a terminator.
std::string render_variable(const ModelingVariable& v, const std::string& name);

}  // namespace cgvv::frontio
