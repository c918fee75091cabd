#pragma once

#include <string>

#include "ncfactor/sparse_poly.hpp"

namespace ncfactor {

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := scalar | variable | '(' expr ')'
// Variables are x0..x{n-1}; when n <= 4 the aliases x,y,z,w name x0..x3.
// Scalars are unsigned "123" or "2/3". Juxtaposition is not multiplication.
// SyntaxError carries the byte position; unknown names raise UnknownVariable.
// Products expand in source order; nothing commutes.
SparsePoly parse_poly(const std::string& text, uint32_t n, FieldSpec field);

}  // namespace ncfactor
