#pragma once

#include <span>
#include <vector>

#include "polydet/modarith.hpp"
#include "polydet/parallel.hpp"
#include "polydet/tensor.hpp"

namespace polydet {

/// Precomputed tables for mixed-radix conversion over primes p_0..p_{n-1}.
/// Weights are m_0 = 1 and m_j = p_0 * ... * p_{j-1}.
class CrtBasis {
 public:
  /// Throws std::invalid_argument on an empty or repeated prime list.
  explicit CrtBasis(std::vector<Residue> primes);

  std::size_t size() const { return primes_.size(); }
  const std::vector<Residue>& primes() const { return primes_; }
  const BigInt& product() const { return product_; }
  const std::vector<BigInt>& weights() const { return weights_; }

  /// c_i = (p_0 ... p_{i-1})^-1 mod p_i; c_0 is defined as 1.
  Residue inverse(std::size_t i) const { return inverses_[i]; }
  /// m_j mod p_i for j < i.
  Residue weight_mod(std::size_t i, std::size_t j) const { return weight_mod_[i][j]; }

 private:
  std::vector<Residue> primes_;
  std::vector<std::vector<Residue>> weight_mod_;
  std::vector<Residue> inverses_;
  std::vector<BigInt> weights_;
  BigInt product_;
};

/// Mixed-radix digits a_i in [0, p_i) with sum a_j m_j = x_i (mod p_i).
/// Word-size arithmetic only; the recurrence over i is serial.
std::vector<Residue> mrc_digits(std::span<const Residue> residues, const CrtBasis& basis);

/// a_0 + p_0 (a_1 + p_1 (a_2 + ...)), in [0, P).
BigInt horner_lift(std::span<const Residue> digits, const CrtBasis& basis);

/// Maps x in [0, P) to (-P/2, P/2].
BigInt signed_lift(const BigInt& x, const BigInt& product);

/// Combines one residue tensor per prime into signed integer coefficients.
CoeffTensor combine_tensor(std::span<const ModTensor> residues, const CrtBasis& basis,
                           const Scheduler& sched = Scheduler{});

}  // namespace polydet
