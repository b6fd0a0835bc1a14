#pragma once

#include <string>
#include <vector>

#include "polydet/polynomial.hpp"

namespace polydet {

/// Sylvester matrix of f and g with respect to vars[var]. Entries are
/// polynomials in the remaining variables; when none remain, the eliminated
/// variable is kept as a degree-zero placeholder axis so the matrix still has
/// one. Throws std::invalid_argument("no eliminand") if both degrees in
/// vars[var] are zero.
PolyMatrix sylvester(const Polynomial& f, const Polynomial& g, std::size_t var, const std::vector<std::string>& vars);

/// Coefficient of vars[var]^k in f, as a polynomial in the other variables.
Polynomial coefficient_in(const Polynomial& f, std::size_t var, unsigned k);

}  // namespace polydet
