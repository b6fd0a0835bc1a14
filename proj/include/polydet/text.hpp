#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polydet/errors.hpp"
#include "polydet/polynomial.hpp"

namespace polydet {

// Matrix documents look like
//
//   # comment
//   vars x y
//   1 + 2*x ; x^2*y - 3
//   y       ; -x
//
// Expressions use + - * ^ over declared variables and decimal integers. A
// variable may appear once per term (write x^2, not x*x).

/// Throws ParseError; line/column are 1-based and relative to `line` /
/// `column_offset` of the enclosing document.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::size_t line = 1,
                            std::size_t column_offset = 0);

PolyMatrix parse_matrix(std::string_view doc);

/// Graded lexicographic order by declared variable order, highest first.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

std::string format_matrix(const PolyMatrix& m);

}  // namespace polydet
