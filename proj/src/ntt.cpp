#include "polydet/ntt.hpp"

#include <bit>
#include <stdexcept>

namespace polydet {

TwiddleTable::TwiddleTable(const PrimeSpec& prime, unsigned max_log) : prime_(prime), max_log_(max_log) {
  if (max_log > prime.q) throw std::invalid_argument("unsupported length");
  const Residue p = prime.p;
  forward_.resize(max_log + 1);
  inverse_.resize(max_log + 1);
  for (unsigned l = 0; l <= max_log; ++l) {
    const std::size_t half = (std::size_t{1} << l) / 2;
    const Residue w = prime.root_of_order_log2(l);
    const Residue w_inv = inv_mod(w, p);
    auto& fw = forward_[l];
    auto& iv = inverse_[l];
    fw.resize(half);
    iv.resize(half);
    Residue a = 1, b = 1;
    for (std::size_t j = 0; j < half; ++j) {
      fw[j] = a;
      iv[j] = b;
      a = mul_mod(a, w, p);
      b = mul_mod(b, w_inv, p);
    }
  }
}

namespace {

unsigned checked_log(std::size_t n, const TwiddleTable& table) {
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("unsupported length");
  const auto l = static_cast<unsigned>(std::countr_zero(n));
  if (l > table.max_log()) throw std::invalid_argument("unsupported length");
  return l;
}

// Radix-2 Stockham passes with ping-pong buffers. Pass s works on sub-transforms
// of length len = N >> s interleaved with stride `stride` = 2^s:
//   S1  gather the pair (x[q + stride*j], x[q + stride*(j + len/2)])
//   S3  butterfly  a + b,  a - b
//   S2  twiddle the difference by w_len^j
// and scatter to y[q + stride*2j], y[q + stride*(2j+1)], which leaves the
// output in natural order.
void stockham(std::span<Residue> data, std::span<Residue> scratch, unsigned log_n,
              const TwiddleTable& table, bool inverse) {
  const Residue p = table.modulus();
  const std::size_t n = data.size();
  Residue* x = data.data();
  Residue* y = scratch.data();
  for (unsigned s = 0; s < log_n; ++s) {
    const std::size_t stride = std::size_t{1} << s;
    const std::size_t len = n >> s;
    const std::size_t half = len / 2;
    auto tw = inverse ? table.inverse(log_n - s) : table.forward(log_n - s);
    for (std::size_t j = 0; j < half; ++j) {
      const Residue w = tw[j];
      const Residue* lo = x + stride * j;
      const Residue* hi = x + stride * (j + half);
      Residue* even = y + stride * (2 * j);
      Residue* odd = y + stride * (2 * j + 1);
      for (std::size_t q = 0; q < stride; ++q) {
        const Residue a = lo[q];
        const Residue b = hi[q];
        even[q] = add_mod(a, b, p);
        odd[q] = mul_mod(sub_mod(a, b, p), w, p);
      }
    }
    std::swap(x, y);
  }
  if (x != data.data()) std::copy(x, x + n, data.data());
}

void transform_rows(std::span<Residue> data, std::size_t row_len, const TwiddleTable& table,
                    const Scheduler& sched, bool inverse) {
  const unsigned log_n = checked_log(row_len, table);
  if (data.size() % row_len != 0) throw std::invalid_argument("ntt: data is not a whole number of rows");
  const std::size_t rows = data.size() / row_len;
  const Residue p = table.modulus();
  const Residue scale = inverse ? inv_mod(row_len % p, p) : 1;
  sched.for_chunks(rows, [&](std::size_t begin, std::size_t end) {
    std::vector<Residue> scratch(row_len);
    for (std::size_t r = begin; r < end; ++r) {
      auto row = data.subspan(r * row_len, row_len);
      stockham(row, scratch, log_n, table, inverse);
      if (inverse && scale != 1)
        for (auto& v : row) v = mul_mod(v, scale, p);
    }
  });
}

ModTensor transform_multi(const ModTensor& t, const TwiddleTable& table, const Scheduler& sched, bool inverse) {
  for (std::size_t len : t.shape()) checked_log(len, table);
  ModTensor cur = t;
  for (std::size_t round = 0; round < t.rank(); ++round) {
    transform_rows(cur.data(), cur.shape().back(), table, sched, inverse);
    cur = axis_rotate(cur);
  }
  return cur;
}

}  // namespace

void ntt_forward_1d(std::span<Residue> data, const TwiddleTable& table) {
  transform_rows(data, data.size(), table, Scheduler{}, false);
}

void ntt_inverse_1d(std::span<Residue> data, const TwiddleTable& table) {
  transform_rows(data, data.size(), table, Scheduler{}, true);
}

void ntt_forward_rows(std::span<Residue> data, std::size_t row_len, const TwiddleTable& table,
                      const Scheduler& sched) {
  transform_rows(data, row_len, table, sched, false);
}

void ntt_inverse_rows(std::span<Residue> data, std::size_t row_len, const TwiddleTable& table,
                      const Scheduler& sched) {
  transform_rows(data, row_len, table, sched, true);
}

ModTensor ntt_forward_multi(const ModTensor& t, const TwiddleTable& table, const Scheduler& sched) {
  return transform_multi(t, table, sched, false);
}

ModTensor ntt_inverse_multi(const ModTensor& t, const TwiddleTable& table, const Scheduler& sched) {
  return transform_multi(t, table, sched, true);
}

}  // namespace polydet
