#pragma once

#include <filesystem>
#include <string_view>

#include "markov/expr.hpp"
#include "markov/function.hpp"

namespace markov {

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ['-'] atom ['^' nat]
//   atom   := number | 't' | 'sqrt2' | call | '(' expr ')'
//   call   := abs(expr) | min(expr, expr) | max(expr, expr)
//           | piecewise(pred ':' expr {',' pred ':' expr} ',' 'else' ':' expr)
//   pred   := conj ('or' conj)*
//   conj   := patom ('and' patom)*
//   patom  := 'rational' '(' 't' ')' | 't' ('<' | '<=' | '>' | '>=') constexpr | '(' pred ')'
// A number is an integer or a p/q literal written without spaces.
//
// All functions throw parse_error with 1-based line and column.
Expr parse_expr(std::string_view src);

// A constant expression folded to its exact value, e.g. "-1/2", "3/4*sqrt2",
// "1+2*sqrt2". Accepts the textual form printed by QuadNum::str().
QuadNum parse_scalar(std::string_view src);

// Function-definition file: one binding per line,
//   f = <expr>
//   g = <expr>
//   omega = (<lo>, <hi>)
// with '#' starting a comment. All three bindings are required.
IntervalFunction parse_function_file(std::string_view text);

IntervalFunction load_function_file(const std::filesystem::path& path);

}  // namespace markov
