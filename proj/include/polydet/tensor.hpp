#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polydet/types.hpp"

namespace polydet {

inline std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

/// Dense row-major tensor, last axis contiguous. `axes()` records which
/// variable each axis carries so a rotated tensor still knows its order.
template <typename Scalar>
class Tensor {
 public:
  using value_type = Scalar;

  Tensor() = default;

  explicit Tensor(Shape shape, Scalar fill = Scalar(0))
      : shape_(std::move(shape)), data_(shape_size(shape_), fill) {
    axes_.resize(shape_.size());
    std::iota(axes_.begin(), axes_.end(), std::size_t{0});
  }

  Tensor(Shape shape, std::vector<std::size_t> axes, std::vector<Scalar> data)
      : shape_(std::move(shape)), axes_(std::move(axes)), data_(std::move(data)) {
    if (axes_.size() != shape_.size() || data_.size() != shape_size(shape_))
      throw std::invalid_argument("Tensor: data does not match shape");
  }

  const Shape& shape() const { return shape_; }
  const std::vector<std::size_t>& axes() const { return axes_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }

  std::span<Scalar> data() { return data_; }
  std::span<const Scalar> data() const { return data_; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t offset(std::span<const std::size_t> index) const {
    assert(index.size() == shape_.size());
    std::size_t off = 0;
    for (std::size_t k = 0; k < shape_.size(); ++k) off = off * shape_[k] + index[k];
    return off;
  }

  Scalar& operator()(std::span<const std::size_t> index) { return data_[offset(index)]; }
  const Scalar& operator()(std::span<const std::size_t> index) const { return data_[offset(index)]; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<std::size_t> axes_;
  std::vector<Scalar> data_;
};

using CoeffTensor = Tensor<BigInt>;
using ModTensor = Tensor<Residue>;

/// Moves the last axis to the front: old index (i_0..i_{n-1}) lands at
/// (i_{n-1}, i_0..i_{n-2}). The data is physically transposed so the new last
/// axis is contiguous.
template <typename Scalar>
Tensor<Scalar> axis_rotate(const Tensor<Scalar>& t) {
  const std::size_t n = t.rank();
  if (n <= 1) return t;
  const std::size_t last = t.shape().back();
  const std::size_t rows = t.size() / last;

  Shape shape(n);
  shape[0] = last;
  std::copy(t.shape().begin(), t.shape().end() - 1, shape.begin() + 1);
  std::vector<std::size_t> axes(n);
  axes[0] = t.axes().back();
  std::copy(t.axes().begin(), t.axes().end() - 1, axes.begin() + 1);

  // viewed as a rows x last matrix, rotation is a plain transpose
  std::vector<Scalar> out(t.size());
  auto src = t.data();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < last; ++c) out[c * rows + r] = src[r * last + c];
  return Tensor<Scalar>(std::move(shape), std::move(axes), std::move(out));
}

/// One sparse term: per-variable exponents and an integer coefficient.
using Exponents = std::vector<unsigned>;
using Term = std::pair<Exponents, BigInt>;

/// Dense coefficient tensor for `terms`. Exponent tuple e lands at index e.
/// Coefficients of repeated monomials are summed. Throws
/// std::out_of_range("degree overflow") when an exponent does not fit.
CoeffTensor encode(std::span<const Term> terms, const Shape& shape);

/// Non-zero coefficients of t as sorted terms (exponents in the tensor's
/// axis order).
std::vector<Term> decode(const CoeffTensor& t);

struct PaddedShape {
  Shape shape;
  unsigned q_max = 0;
};

/// Rounds every required length up to a power of two.
PaddedShape pad_shape(std::span<const std::size_t> required_lengths);

/// Canonical residues in [0, p), negative values wrapping to p - (|a| mod p).
ModTensor reduce_mod(const CoeffTensor& t, Residue p);
Residue reduce_mod(const BigInt& a, Residue p);

}  // namespace polydet
