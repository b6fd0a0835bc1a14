#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "polydet/ntt.hpp"

using namespace polydet;

namespace {

std::vector<Residue> random_vec(std::mt19937_64& rng, std::size_t n, Residue p) {
  std::vector<Residue> v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

ModTensor random_tensor(std::mt19937_64& rng, const Shape& shape, Residue p) {
  ModTensor t(shape);
  for (auto& x : t.data()) x = rng() % p;
  return t;
}

}  // namespace

TEST_CASE("twiddle table rows") {
  const auto prime = PrimeSpec::make(2013265921, 27);
  TwiddleTable table(prime, 10);
  for (unsigned l = 1; l <= 10; ++l) {
    const Residue w = table.root(l);
    const std::size_t n = std::size_t{1} << l;
    CHECK(pow_mod(w, n, prime.p) == 1);
    CHECK(pow_mod(w, n / 2, prime.p) == prime.p - 1);
    auto row = table.forward(l);
    REQUIRE(row.size() == n / 2);
    for (std::size_t j = 0; j < row.size(); ++j) CHECK(row[j] == pow_mod(w, j, prime.p));
  }
  CHECK_THROWS_AS(TwiddleTable(prime, 28), std::invalid_argument);
}

TEST_CASE("ntt small cases") {
  const auto prime = PrimeSpec::make(97, 5);
  TwiddleTable table(prime, 5);
  std::vector<Residue> two = {10, 3};
  ntt_forward_1d(two, table);
  CHECK(two == std::vector<Residue>{13, 7});
  std::vector<Residue> delta = {42, 0, 0, 0};
  ntt_forward_1d(delta, table);
  CHECK(delta == std::vector<Residue>{42, 42, 42, 42});
  std::vector<Residue> one = {5};
  ntt_inverse_1d(one, table);
  CHECK(one == std::vector<Residue>{5});

  std::vector<Residue> bad(6);
  CHECK_THROWS_WITH_AS(ntt_forward_1d(bad, table), "unsupported length", std::invalid_argument);
  std::vector<Residue> too_long(64);
  CHECK_THROWS_AS(ntt_forward_1d(too_long, table), std::invalid_argument);
}

TEST_CASE("ntt matches naive DFT and inverts") {
  std::mt19937_64 rng(7);
  for (Residue p : {Residue{97}, Residue{2013265921}, Residue{3221225473}, Residue{4611685941117976577ull}}) {
    const auto prime = PrimeSpec::make(p, 5);
    TwiddleTable table(prime, std::min(prime.q, 10u));
    for (unsigned l = 1; l <= std::min(prime.q, 5u); ++l) {
      const std::size_t n = std::size_t{1} << l;
      auto x = random_vec(rng, n, p);
      auto y = x;
      ntt_forward_1d(y, table);
      CHECK(y == oracle::naive_dft(x, table.root(l), p));
      ntt_inverse_1d(y, table);
      CHECK(y == x);
    }
  }
}

TEST_CASE("inverse matches naive inverse DFT on N=8") {
  std::mt19937_64 rng(8);
  const Residue p = 2013265921;
  TwiddleTable table(PrimeSpec::make(p, 27), 3);
  auto x = random_vec(rng, 8, p);
  auto y = x;
  ntt_inverse_1d(y, table);
  auto expect = oracle::naive_dft(x, inv_mod(table.root(3), p), p);
  for (auto& v : expect) v = oracle::big_mulmod(v, inv_mod(8, p), p);
  CHECK(y == expect);
}

TEST_CASE("roundtrip lengths 2..1024") {
  std::mt19937_64 rng(9);
  const Residue p = 2013265921;
  TwiddleTable table(PrimeSpec::make(p, 27), 10);
  for (unsigned l = 1; l <= 10; ++l) {
    auto x = random_vec(rng, std::size_t{1} << l, p);
    auto y = x;
    ntt_forward_1d(y, table);
    ntt_inverse_1d(y, table);
    CHECK(y == x);
  }
}

TEST_CASE("linearity and cyclic convolution") {
  std::mt19937_64 rng(10);
  const Residue p = 998244353;
  TwiddleTable table(PrimeSpec::make(p, 23), 4);
  const std::size_t n = 16;
  auto x = random_vec(rng, n, p), y = random_vec(rng, n, p);
  const Residue a = rng() % p, b = rng() % p;
  std::vector<Residue> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = add_mod(mul_mod(a, x[i], p), mul_mod(b, y[i], p), p);
  auto fx = x, fy = y;
  ntt_forward_1d(fx, table);
  ntt_forward_1d(fy, table);
  ntt_forward_1d(combo, table);
  for (std::size_t i = 0; i < n; ++i) CHECK(combo[i] == add_mod(mul_mod(a, fx[i], p), mul_mod(b, fy[i], p), p));

  std::vector<Residue> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = mul_mod(fx[i], fy[i], p);
  ntt_inverse_1d(prod, table);
  std::vector<Residue> school(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      school[(i + j) % n] = add_mod(school[(i + j) % n], oracle::big_mulmod(x[i], y[j], p), p);
  CHECK(prod == school);
}

TEST_CASE("multivariate transform evaluates on the root grid") {
  const Residue p = 97;
  const auto prime = PrimeSpec::make(p, 5);
  TwiddleTable table(prime, 2);
  // 1 + 2x + 3xy + 4x^2 + 5y^2 padded to (4, 4)
  oracle::Poly f = {{{0, 0}, 1}, {{1, 0}, 2}, {{1, 1}, 3}, {{2, 0}, 4}, {{0, 2}, 5}};
  ModTensor t({4, 4});
  for (const auto& [e, c] : f) t[e[0] * 4 + e[1]] = static_cast<Residue>(c);
  ModTensor grid = ntt_forward_multi(t, table);
  CHECK(grid.axes() == std::vector<std::size_t>{0, 1});
  const Residue w = table.root(2);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(grid[a * 4 + b] == oracle::evaluate(f, {pow_mod(w, a, p), pow_mod(w, b, p)}, p));

  ModTensor constant({2, 4, 2}, 0);
  constant[0] = 17;
  const ModTensor flat = ntt_forward_multi(constant, table);
  for (Residue v : flat.data()) CHECK(v == 17);
}

TEST_CASE("multivariate on unequal axis lengths") {
  std::mt19937_64 rng(12);
  const Residue p = 2013265921;
  TwiddleTable table(PrimeSpec::make(p, 27), 4);
  ModTensor t = random_tensor(rng, {2, 8, 4}, p);
  ModTensor grid = ntt_forward_multi(t, table);
  oracle::Poly f;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 8; ++j)
      for (unsigned k = 0; k < 4; ++k) f[{i, j, k}] = t[(i * 8 + j) * 4 + k];
  for (int probe = 0; probe < 10; ++probe) {
    std::size_t a = rng() % 2, b = rng() % 8, c = rng() % 4;
    std::vector<Residue> pt = {pow_mod(table.root(1), a, p), pow_mod(table.root(3), b, p),
                               pow_mod(table.root(2), c, p)};
    CHECK(grid[(a * 8 + b) * 4 + c] == oracle::evaluate(f, pt, p));
  }
}

TEST_CASE("vn=1 multi equals 1-D") {
  std::mt19937_64 rng(13);
  const Residue p = 2013265921;
  TwiddleTable table(PrimeSpec::make(p, 27), 5);
  ModTensor t = random_tensor(rng, {32}, p);
  std::vector<Residue> v(t.data().begin(), t.data().end());
  ntt_forward_1d(v, table);
  auto grid = ntt_forward_multi(t, table);
  CHECK(std::vector<Residue>(grid.data().begin(), grid.data().end()) == v);
}

TEST_CASE("multivariate interpolation recovers coefficients") {
  std::mt19937_64 rng(14);
  const Residue p = 3221225473;
  TwiddleTable table(PrimeSpec::make(p, 30), 4);
  for (const Shape& shape : {Shape{4, 4}, Shape{2, 8, 4}, Shape{16, 16, 8}}) {
    ModTensor t = random_tensor(rng, shape, p);
    CHECK(ntt_inverse_multi(ntt_forward_multi(t, table), table) == t);
  }
  ModTensor zero({4, 4});
  CHECK(ntt_inverse_multi(zero, table) == zero);

  // grid built by direct evaluation of a degree-(3,3) polynomial
  oracle::Poly f;
  ModTensor coeffs({4, 4});
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j) {
      Residue c = rng() % p;
      f[{i, j}] = c;
      coeffs[i * 4 + j] = c;
    }
  ModTensor grid({4, 4});
  const Residue w = table.root(2);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) grid[a * 4 + b] = oracle::evaluate(f, {pow_mod(w, a, p), pow_mod(w, b, p)}, p);
  CHECK(ntt_inverse_multi(grid, table) == coeffs);
}

TEST_CASE("distinct coefficient tensors give distinct grids") {
  std::mt19937_64 rng(15);
  const Residue p = 97;
  TwiddleTable table(PrimeSpec::make(p, 5), 2);
  for (int trial = 0; trial < 200; ++trial) {
    ModTensor a = random_tensor(rng, {4, 2}, p);
    ModTensor b = a;
    b[rng() % b.size()] = (b[0] + 1 + rng() % (p - 1)) % p;
    if (a == b) continue;
    CHECK(ntt_forward_multi(a, table) != ntt_forward_multi(b, table));
  }
}

TEST_CASE("batched transform is independent of worker count and chunk size") {
  std::mt19937_64 rng(16);
  const Residue p = 2013265921;
  TwiddleTable table(PrimeSpec::make(p, 27), 5);
  ModTensor t = random_tensor(rng, {8, 16, 32}, p);
  const ModTensor reference = ntt_forward_multi(t, table, Scheduler(1, 0));
  for (unsigned threads : {2u, 4u, 7u})
    for (std::size_t chunk : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{1000}})
      CHECK(ntt_forward_multi(t, table, Scheduler(threads, chunk)) == reference);
}
