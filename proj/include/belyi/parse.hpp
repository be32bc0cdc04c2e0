#pragma once

// Text input for polynomials:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      division only by nonzero constants
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'sqrt(' integer ')' | name | '(' expr ')'
//
// Names are either variables of the target list or bound constants (for
// example g = 45*sqrt(105)). Whitespace is ignored.

#include <map>
#include <stdexcept>
#include <string>

#include "belyi/multipoly.hpp"

namespace belyi {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

using QuadPoly = MultiPoly<QuadExt>;

QuadPoly parse_poly(const std::string& text, const VarList& vars, const std::map<std::string, QuadExt>& bindings = {});

/// Same, for inputs that must stay rational (throws ParseError otherwise).
QPoly parse_rational_poly(const std::string& text, const VarList& vars);

/// Converts a polynomial whose coefficients are all rational.
std::optional<QPoly> to_rational_poly(const QuadPoly& p);
QuadPoly to_quad_poly(const QPoly& p);

}  // namespace belyi
