#pragma once

#include <string>

#include "orbitstrata/polynomial.hpp"

namespace orbitstrata {

/// Parses a polynomial expression.
///
/// Grammar: integer and rational literals (`3`, `4/3`), declared identifiers,
/// the constant token `rt` (= sqrt(D)), operators + - * ^ with non-negative
/// integer exponents, and parentheses. No implicit multiplication.
/// Whitespace-insensitive. Errors carry the offending position.
Polynomial parse_poly(const std::string& expr, const ContextPtr& ctx, unsigned d);

/// Parses a constant expression (no variables) into a scalar.
Scalar parse_scalar(const std::string& expr, unsigned d);

/// Canonical rendering: terms in descending graded lex order; rationals as
/// "a" or "a/b"; sqrt(D) multiples via "rt"; mixed coefficients
/// parenthesized as "(a+b*rt)". parse(render(f)) == f.
std::string render_poly(const Polynomial& f);

std::string render_scalar(const Scalar& s);

} // namespace orbitstrata
