#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mahler/polynomial.hpp"

namespace mahler {

/// Parses a polynomial expression.
///
/// Grammar (whitespace ignored):
///
///     expr    := ['+'|'-'] term (('+'|'-') term)*
///     term    := unary ('*' unary)*
///     unary   := ('+'|'-') unary | power
///     power   := primary ['^' integer]
///     primary := number ['i'] | variable | '(' expr ')'
///
/// Variables are `x1`, `x2`, … or the aliases `x`, `y`, `z` (= x1, x2, x3,
/// only when no index above 3 occurs). `1i` is the imaginary unit, so complex
/// coefficients read as `(2+1i)`. Implicit multiplication is rejected.
///
/// The result has max(highest variable index, min_nvars, 1) variables.
/// Throws ParseError with the offending byte offset.
Polynomial parse_poly(std::string_view expr, std::size_t min_nvars = 0);

/// Prints `p` in the grammar above. parse_poly(to_string(p), p.nvars()) == p
/// bit for bit: coefficients use the shortest round-tripping decimal form.
std::string to_string(const Polynomial& p);

}  // namespace mahler
