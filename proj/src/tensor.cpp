#include "polydet/tensor.hpp"

#include <bit>

namespace polydet {

CoeffTensor encode(std::span<const Term> terms, const Shape& shape) {
  CoeffTensor t(shape);
  std::vector<std::size_t> index(shape.size());
  for (const auto& [exps, coeff] : terms) {
    if (exps.size() != shape.size()) throw std::invalid_argument("encode: exponent arity mismatch");
    for (std::size_t k = 0; k < shape.size(); ++k) {
      if (exps[k] >= shape[k]) throw std::out_of_range("degree overflow");
      index[k] = exps[k];
    }
    t(index) += coeff;
  }
  return t;
}

std::vector<Term> decode(const CoeffTensor& t) {
  std::vector<Term> terms;
  const Shape& shape = t.shape();
  Exponents exps(shape.size(), 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    if (t[flat] != 0) terms.emplace_back(exps, t[flat]);
    // row-major odometer
    for (std::size_t k = shape.size(); k-- > 0;) {
      if (++exps[k] < shape[k]) break;
      exps[k] = 0;
    }
  }
  return terms;
}

PaddedShape pad_shape(std::span<const std::size_t> required_lengths) {
  PaddedShape out;
  std::size_t widest = 1;
  for (std::size_t len : required_lengths) {
    if (len == 0) throw std::invalid_argument("pad_shape: lengths must be positive");
    std::size_t n = std::bit_ceil(len);
    out.shape.push_back(n);
    widest = std::max(widest, n);
  }
  out.q_max = static_cast<unsigned>(std::countr_zero(widest));
  return out;
}

Residue reduce_mod(const BigInt& a, Residue p) {
  BigInt r = a % p;  // sign follows the dividend
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

ModTensor reduce_mod(const CoeffTensor& t, Residue p) {
  std::vector<Residue> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = reduce_mod(t[i], p);
  return ModTensor(t.shape(), t.axes(), std::move(out));
}

}  // namespace polydet
