#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polydet/types.hpp"

namespace polydet {

/// Moduli must stay below this so that sums fit in 64 bits and products in 128.
inline constexpr Residue kModulusLimit = Residue{1} << 62;

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}

inline Residue sub_mod(Residue a, Residue b, Residue p) {
  return a >= b ? a - b : a + p - b;
}

inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % p);
}

Residue pow_mod(Residue base, std::uint64_t exp, Residue p);

/// Inverse of a modulo prime p. Throws std::domain_error("no inverse") for a = 0.
Residue inv_mod(Residue a, Residue p);

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(std::uint64_t n);

/// A prime p = c * 2^q + 1 together with a primitive 2^q-th root of unity.
struct PrimeSpec {
  Residue p = 0;
  std::uint64_t c = 0;
  unsigned q = 0;
  Residue omega = 1;

  /// Builds the spec for prime p with the largest admissible q = v2(p - 1)
  /// capped at max_q. Throws std::invalid_argument if p is not a prime below
  /// kModulusLimit.
  static PrimeSpec make(Residue p, unsigned max_q);

  /// Checks p = c*2^q + 1, primality and the order of omega.
  bool valid() const;

  /// Primitive root of order 2^l for l <= q.
  Residue root_of_order_log2(unsigned l) const;

  friend bool operator==(const PrimeSpec&, const PrimeSpec&) = default;
};

/// omega with omega^order = 1 and omega^(order/2) != 1, searched over the
/// candidates a = 2, 3, 5, 7, ... as a^((p-1)/order). order must be a power
/// of two. Throws std::domain_error("order unavailable") if order does not
/// divide p - 1.
Residue find_root_of_order(Residue p, std::uint64_t order);

struct PrimeSearch {
  unsigned q = 0;
  BigInt min_product = 1;
  std::uint64_t start = 1'000'000'000;
  std::uint64_t limit = kModulusLimit;  // candidates >= limit are never tried
  std::size_t min_count = 2;
};

/// Ascending primes >= start with p = 1 (mod 2^q), stopping at the shortest
/// prefix whose product reaches min_product (and at least min_count long).
/// Throws InsufficientPrimes when the window [start, limit) runs dry.
std::vector<PrimeSpec> find_fourier_primes(const PrimeSearch& search);

class InsufficientPrimes : public std::runtime_error {
 public:
  InsufficientPrimes(std::size_t found, std::size_t needed, BigInt product, BigInt target);
  std::size_t found;
  std::size_t needed;
  BigInt product;
  BigInt target;
};

/// Counts of primes admitting order-N roots among the first `prime_count`
/// primes strictly above `lower`.
struct CensusRow {
  std::uint64_t order = 0;
  std::size_t divisible = 0;  // N | p - 1
  std::size_t exact = 0;      // N | p - 1 but 2N does not
};

std::vector<CensusRow> census(const std::vector<std::uint64_t>& orders, std::size_t prime_count,
                              std::uint64_t lower);

}  // namespace polydet
