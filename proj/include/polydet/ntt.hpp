#pragma once

#include <span>
#include <vector>

#include "polydet/modarith.hpp"
#include "polydet/parallel.hpp"
#include "polydet/tensor.hpp"

namespace polydet {

/// Root-of-unity powers for every transform length 2^0 .. 2^max_log.
/// Row l holds (1, w, w^2, ..., w^(2^l/2 - 1)) for w of order 2^l, with a
/// matching row of inverse powers. Immutable after construction.
class TwiddleTable {
 public:
  TwiddleTable(const PrimeSpec& prime, unsigned max_log);

  const PrimeSpec& prime() const { return prime_; }
  Residue modulus() const { return prime_.p; }
  unsigned max_log() const { return max_log_; }

  std::span<const Residue> forward(unsigned log_len) const { return forward_.at(log_len); }
  std::span<const Residue> inverse(unsigned log_len) const { return inverse_.at(log_len); }

  /// Primitive root of order 2^log_len.
  Residue root(unsigned log_len) const { return prime_.root_of_order_log2(log_len); }

 private:
  PrimeSpec prime_;
  unsigned max_log_;
  std::vector<std::vector<Residue>> forward_;
  std::vector<std::vector<Residue>> inverse_;
};

/// out[k] = sum_j data[j] * w^(jk) with w of order data.size(). Self-sorting,
/// no bit reversal. Throws std::invalid_argument("unsupported length").
void ntt_forward_1d(std::span<Residue> data, const TwiddleTable& table);
void ntt_inverse_1d(std::span<Residue> data, const TwiddleTable& table);

/// Transforms every contiguous row of length `row_len` in `data`.
void ntt_forward_rows(std::span<Residue> data, std::size_t row_len, const TwiddleTable& table,
                      const Scheduler& sched = Scheduler{});
void ntt_inverse_rows(std::span<Residue> data, std::size_t row_len, const TwiddleTable& table,
                      const Scheduler& sched = Scheduler{});

/// Evaluates the polynomial held in t on the grid of root-of-unity powers:
/// out[a_0..a_{n-1}] = f(w_0^a_0, ..., w_{n-1}^a_{n-1}), w_k of order N_k.
/// Runs one batched pass on the contiguous axis per variable, rotating axes in
/// between; the original axis order is restored after the full cycle.
ModTensor ntt_forward_multi(const ModTensor& t, const TwiddleTable& table, const Scheduler& sched = Scheduler{});

/// Interpolates coefficients back from the value grid.
ModTensor ntt_inverse_multi(const ModTensor& t, const TwiddleTable& table, const Scheduler& sched = Scheduler{});

}  // namespace polydet
