#include "polydet/reconstruct.hpp"

#include <set>
#include <stdexcept>

namespace polydet {

CrtBasis::CrtBasis(std::vector<Residue> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw std::invalid_argument("CrtBasis: no primes");
  if (std::set<Residue>(primes_.begin(), primes_.end()).size() != primes_.size())
    throw std::invalid_argument("CrtBasis: duplicate primes");

  const std::size_t n = primes_.size();
  weights_.resize(n);
  weight_mod_.resize(n);
  inverses_.resize(n, 1);
  weights_[0] = 1;
  for (std::size_t j = 1; j < n; ++j) weights_[j] = weights_[j - 1] * primes_[j - 1];
  product_ = weights_[n - 1] * primes_[n - 1];

  for (std::size_t i = 0; i < n; ++i) {
    const Residue p = primes_[i];
    auto& row = weight_mod_[i];
    row.resize(i);
    Residue running = 1 % p;
    for (std::size_t j = 0; j < i; ++j) {
      row[j] = running;
      running = mul_mod(running, primes_[j] % p, p);
    }
    if (i > 0) inverses_[i] = inv_mod(running, p);
  }
}

std::vector<Residue> mrc_digits(std::span<const Residue> residues, const CrtBasis& basis) {
  if (residues.size() != basis.size()) throw std::invalid_argument("mrc_digits: residue count mismatch");
  const auto& primes = basis.primes();
  std::vector<Residue> digits(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const Residue p = primes[i];
    // value of the partial sum sum_{j<i} a_j m_j, reduced mod p_i
    Residue partial = 0;
    for (std::size_t j = 0; j < i; ++j) partial = add_mod(partial, mul_mod(digits[j] % p, basis.weight_mod(i, j), p), p);
    digits[i] = mul_mod(sub_mod(residues[i] % p, partial, p), basis.inverse(i), p);
  }
  return digits;
}

BigInt horner_lift(std::span<const Residue> digits, const CrtBasis& basis) {
  if (digits.size() != basis.size()) throw std::invalid_argument("horner_lift: digit count mismatch");
  const auto& primes = basis.primes();
  BigInt x = digits.back();
  for (std::size_t i = digits.size() - 1; i-- > 0;) {
    x *= primes[i];
    x += digits[i];
  }
  return x;
}

BigInt signed_lift(const BigInt& x, const BigInt& product) {
  return 2 * x <= product ? x : x - product;
}

CoeffTensor combine_tensor(std::span<const ModTensor> residues, const CrtBasis& basis, const Scheduler& sched) {
  if (residues.size() != basis.size()) throw std::invalid_argument("combine_tensor: prime count mismatch");
  const ModTensor& first = residues.front();
  for (const auto& t : residues)
    if (t.shape() != first.shape() || t.axes() != first.axes())
      throw std::invalid_argument("combine_tensor: residue tensors differ in shape");

  std::vector<BigInt> coeffs(first.size());
  sched.for_chunks(first.size(), [&](std::size_t begin, std::size_t end) {
    // gather one coefficient's residues contiguously before the serial recurrence
    std::vector<Residue> column(residues.size());
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t i = 0; i < residues.size(); ++i) column[i] = residues[i][k];
      coeffs[k] = signed_lift(horner_lift(mrc_digits(column, basis), basis), basis.product());
    }
  });
  return CoeffTensor(first.shape(), first.axes(), std::move(coeffs));
}

}  // namespace polydet
