#include "polydet/polynomial.hpp"

#include <set>
#include <stdexcept>

namespace polydet {

Polynomial::Polynomial(std::size_t nvars, std::span<const Term> terms) : nvars_(nvars) {
  for (const auto& [exps, c] : terms) add_term(exps, c);
}

Polynomial Polynomial::constant(std::size_t nvars, const BigInt& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

void Polynomial::add_term(const Exponents& exps, const BigInt& c) {
  if (exps.size() != nvars_) throw std::invalid_argument("Polynomial: exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned Polynomial::degree(std::size_t v) const {
  unsigned d = 0;
  for (const auto& [exps, c] : terms_) d = std::max(d, exps[v]);
  return d;
}

BigInt Polynomial::l1_norm() const {
  BigInt sum = 0;
  for (const auto& [exps, c] : terms_) sum += abs(c);
  return sum;
}

CoeffTensor Polynomial::to_tensor(const Shape& shape) const {
  std::vector<Term> flat(terms_.begin(), terms_.end());
  return encode(flat, shape);
}

Polynomial Polynomial::from_tensor(const CoeffTensor& t) {
  // undo any axis rotation so exponents follow variable order
  std::vector<Term> terms = decode(t);
  const auto& axes = t.axes();
  for (auto& [exps, c] : terms) {
    Exponents ordered(exps.size());
    for (std::size_t k = 0; k < exps.size(); ++k) ordered[axes[k]] = exps[k];
    exps = std::move(ordered);
  }
  return Polynomial(t.rank(), terms);
}

PolyMatrix::PolyMatrix(std::vector<std::string> vars, std::size_t order, std::span<const Polynomial> entries)
    : vars_(std::move(vars)), order_(order) {
  if (order == 0) throw std::invalid_argument("PolyMatrix: order must be positive");
  if (entries.size() != order * order) throw std::invalid_argument("PolyMatrix: matrix is not square");
  if (vars_.empty()) throw std::invalid_argument("PolyMatrix: at least one variable required");
  if (std::set<std::string>(vars_.begin(), vars_.end()).size() != vars_.size())
    throw std::invalid_argument("PolyMatrix: duplicate variable name");

  std::map<Polynomial, std::size_t> seen;
  ids_.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.nvars() != vars_.size()) throw std::invalid_argument("PolyMatrix: entry variable count mismatch");
    auto [it, inserted] = seen.try_emplace(e, unique_.size());
    if (inserted) unique_.push_back(e);
    ids_.push_back(it->second);
  }
}

}  // namespace polydet
