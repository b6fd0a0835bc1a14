#include "polydet/modarith.hpp"

#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace polydet {

Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  Residue result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

Residue inv_mod(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw std::domain_error("no inverse");
  // extended Euclid on signed 128-bit to stay exact for p < 2^62
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    __int128 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("no inverse");
  if (t < 0) t += p;
  return static_cast<Residue>(t);
}

namespace {

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = std::countr_zero(d);
  d >>= s;
  for (std::uint64_t w : kWitnesses)
    if (!miller_rabin_round(n, d, s, w)) return false;
  return true;
}

Residue find_root_of_order(Residue p, std::uint64_t order) {
  if (order == 0 || !std::has_single_bit(order) || (p - 1) % order != 0)
    throw std::domain_error("order unavailable");
  if (order == 1) return 1;
  const std::uint64_t cofactor = (p - 1) / order;
  for (std::uint64_t a = 2; a < p; ++a) {
    if (!is_prime(a)) continue;
    Residue w = pow_mod(a, cofactor, p);
    if (pow_mod(w, order / 2, p) != 1) return w;
  }
  throw std::domain_error("order unavailable");
}

PrimeSpec PrimeSpec::make(Residue p, unsigned max_q) {
  if (p >= kModulusLimit || !is_prime(p)) throw std::invalid_argument("PrimeSpec: not a prime below 2^62");
  unsigned q = std::min<unsigned>(std::countr_zero(p - 1), max_q);
  PrimeSpec spec;
  spec.p = p;
  spec.q = q;
  spec.c = (p - 1) >> q;
  spec.omega = find_root_of_order(p, std::uint64_t{1} << q);
  return spec;
}

bool PrimeSpec::valid() const {
  if (p < 2 || p >= kModulusLimit || q >= 62) return false;
  if ((static_cast<unsigned __int128>(c) << q) + 1 != p) return false;
  if (!is_prime(p)) return false;
  if (omega < 1 || omega >= p) return false;
  const std::uint64_t order = std::uint64_t{1} << q;
  if (pow_mod(omega, order, p) != 1) return false;
  return q == 0 || pow_mod(omega, order / 2, p) != 1;
}

Residue PrimeSpec::root_of_order_log2(unsigned l) const {
  if (l > q) throw std::domain_error("order unavailable");
  return pow_mod(omega, std::uint64_t{1} << (q - l), p);
}

namespace {

std::string shortfall_message(std::size_t found, std::size_t needed, const BigInt& product, const BigInt& target) {
  auto bits = [](const BigInt& x) { return x > 0 ? boost::multiprecision::msb(x) + 1 : 0; };
  std::ostringstream os;
  os << "insufficient primes: found " << found << " (need at least " << needed << ") with a " << bits(product)
     << "-bit product (need " << bits(target) << " bits)";
  return os.str();
}

}  // namespace

InsufficientPrimes::InsufficientPrimes(std::size_t found_, std::size_t needed_, BigInt product_, BigInt target_)
    : std::runtime_error(shortfall_message(found_, needed_, product_, target_)),
      found(found_),
      needed(needed_),
      product(std::move(product_)),
      target(std::move(target_)) {}

std::vector<PrimeSpec> find_fourier_primes(const PrimeSearch& search) {
  if (search.q >= 62) throw std::invalid_argument("find_fourier_primes: q must be below 62");
  const std::uint64_t step = std::uint64_t{1} << search.q;
  const std::uint64_t start = std::max<std::uint64_t>(search.start, 2);
  const std::uint64_t limit = std::min(search.limit, kModulusLimit);

  // smallest c with c*step + 1 >= start
  std::uint64_t c = (start - 1 + step - 1) / step;
  std::vector<PrimeSpec> primes;
  BigInt product = 1;
  auto satisfied = [&] { return primes.size() >= search.min_count && product >= search.min_product; };
  while (!satisfied()) {
    const unsigned __int128 candidate = static_cast<unsigned __int128>(c) * step + 1;
    if (candidate >= limit) throw InsufficientPrimes(primes.size(), search.min_count, product, search.min_product);
    const auto p = static_cast<std::uint64_t>(candidate);
    if (c != 0 && is_prime(p)) {
      primes.push_back(PrimeSpec::make(p, search.q));
      product *= p;
    }
    ++c;
  }
  return primes;
}

std::vector<CensusRow> census(const std::vector<std::uint64_t>& orders, std::size_t prime_count,
                              std::uint64_t lower) {
  std::vector<CensusRow> rows;
  rows.reserve(orders.size());
  for (std::uint64_t n : orders) rows.push_back({n, 0, 0});

  std::size_t seen = 0;
  for (std::uint64_t n = lower + 1; seen < prime_count; ++n) {
    if (!is_prime(n)) continue;
    ++seen;
    for (auto& row : rows) {
      if (row.order == 0 || (n - 1) % row.order != 0) continue;
      ++row.divisible;
      if ((n - 1) % (2 * row.order) != 0) ++row.exact;
    }
  }
  return rows;
}

}  // namespace polydet
