#include "polydet/sylvester.hpp"

#include <stdexcept>

namespace polydet {

Polynomial coefficient_in(const Polynomial& f, std::size_t var, unsigned k) {
  Polynomial out(f.nvars() - 1);
  for (const auto& [exps, c] : f.terms()) {
    if (exps[var] != k) continue;
    Exponents rest;
    rest.reserve(exps.size() - 1);
    for (std::size_t v = 0; v < exps.size(); ++v)
      if (v != var) rest.push_back(exps[v]);
    out.add_term(rest, c);
  }
  return out;
}

namespace {

Polynomial widen(const Polynomial& p) {
  // placeholder axis for a matrix with no free variables
  Polynomial out(1);
  for (const auto& [exps, c] : p.terms()) out.add_term(Exponents{0}, c);
  return out;
}

}  // namespace

PolyMatrix sylvester(const Polynomial& f, const Polynomial& g, std::size_t var, const std::vector<std::string>& vars) {
  if (var >= vars.size() || f.nvars() != vars.size() || g.nvars() != vars.size())
    throw std::invalid_argument("sylvester: variable out of range");
  const unsigned m = f.degree(var);
  const unsigned n = g.degree(var);
  if (m == 0 && n == 0) throw std::invalid_argument("no eliminand");

  std::vector<std::string> rest;
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (v != var) rest.push_back(vars[v]);
  const bool placeholder = rest.empty();
  if (placeholder) rest.push_back(vars[var]);

  auto coeff = [&](const Polynomial& p, unsigned k) {
    Polynomial c = coefficient_in(p, var, k);
    return placeholder ? widen(c) : c;
  };
  std::vector<Polynomial> fc(m + 1), gc(n + 1);
  for (unsigned k = 0; k <= m; ++k) fc[k] = coeff(f, k);
  for (unsigned k = 0; k <= n; ++k) gc[k] = coeff(g, k);

  const std::size_t size = m + n;
  const Polynomial zero(rest.size());
  std::vector<Polynomial> entries(size * size, zero);
  // n shifted copies of f's coefficients, leading coefficient first, then m of g's
  for (std::size_t row = 0; row < n; ++row)
    for (unsigned k = 0; k <= m; ++k) entries[row * size + row + (m - k)] = fc[k];
  for (std::size_t row = 0; row < m; ++row)
    for (unsigned k = 0; k <= n; ++k) entries[(n + row) * size + row + (n - k)] = gc[k];
  return PolyMatrix(std::move(rest), size, entries);
}

}  // namespace polydet
