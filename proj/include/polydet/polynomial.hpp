#pragma once

#include <map>
#include <string>
#include <vector>

#include "polydet/tensor.hpp"

namespace polydet {

/// Sparse multivariate integer polynomial over an externally declared variable
/// list. Terms are kept normalized: no zero coefficients, one entry per
/// monomial, ordered by exponent vector.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, std::span<const Term> terms);

  static Polynomial constant(std::size_t nvars, const BigInt& c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }

  /// Adds c * monomial, dropping the entry if it cancels.
  void add_term(const Exponents& exps, const BigInt& c);

  /// Highest exponent of variable v (0 for the zero polynomial).
  unsigned degree(std::size_t v) const;

  /// Sum of absolute coefficient values.
  BigInt l1_norm() const;

  CoeffTensor to_tensor(const Shape& shape) const;
  static Polynomial from_tensor(const CoeffTensor& t);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    return a.terms_ < b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, BigInt> terms_;
};

/// Square matrix of polynomials in shared variables. Structurally equal
/// entries share one id so downstream stages transform each of them once.
class PolyMatrix {
 public:
  PolyMatrix(std::vector<std::string> vars, std::size_t order, std::span<const Polynomial> entries);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::size_t order() const { return order_; }

  const Polynomial& operator()(std::size_t row, std::size_t col) const { return unique_[ids_[row * order_ + col]]; }
  std::size_t id(std::size_t row, std::size_t col) const { return ids_[row * order_ + col]; }

  /// Entry ids, row-major.
  const std::vector<std::size_t>& ids() const { return ids_; }
  const std::vector<Polynomial>& unique_entries() const { return unique_; }
  std::size_t unique_count() const { return unique_.size(); }

  /// Replication factor k / r^2.
  double replication() const {
    return static_cast<double>(unique_.size()) / static_cast<double>(order_ * order_);
  }

 private:
  std::vector<std::string> vars_;
  std::size_t order_;
  std::vector<std::size_t> ids_;
  std::vector<Polynomial> unique_;
};

}  // namespace polydet
