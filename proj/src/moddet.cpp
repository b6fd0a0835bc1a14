#include "polydet/moddet.hpp"

#include <stdexcept>

namespace polydet {

DetTrace det_mod_trace(ModMatrix m, Residue p) {
  const auto r = static_cast<std::size_t>(m.rows());
  if (m.cols() != m.rows()) throw std::invalid_argument("det_mod: matrix is not square");
  DetTrace trace;
  trace.pivots.reserve(r);

  Residue pivot_product = 1;
  Residue inflation = 1;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t col = 0;
    while (col < r && m(i, col) == 0) ++col;
    if (col == r) {
      trace.det = 0;
      return trace;
    }
    const Residue z = m(i, col);
    trace.pivots.push_back({i, z, col});
    pivot_product = mul_mod(pivot_product, z, p);
    if (i + 1 < r) inflation = mul_mod(inflation, pow_mod(z, r - 1 - i, p), p);

    for (std::size_t j = i + 1; j < r; ++j) {
      const Residue t = m(j, col);
      for (std::size_t c = 0; c < r; ++c)
        m(j, c) = sub_mod(mul_mod(z, m(j, c), p), mul_mod(t, m(i, c), p), p);
    }
  }

  std::size_t inversions = 0;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      if (trace.pivots[a].column > trace.pivots[b].column) ++inversions;
  trace.odd_permutation = inversions % 2 == 1;

  Residue det = mul_mod(pivot_product, inv_mod(inflation, p), p);
  trace.det = trace.odd_permutation ? neg_mod(det, p) : det;
  return trace;
}

Residue det_mod(ModMatrix m, Residue p) { return det_mod_trace(std::move(m), p).det; }

ModTensor det_grid(std::span<const ModTensor> entry_grids, std::span<const std::size_t> ids, std::size_t order,
                   Residue p, const Scheduler& sched,
                   const std::function<void(std::size_t, std::size_t)>& progress) {
  if (entry_grids.empty() || ids.size() != order * order)
    throw std::invalid_argument("det_grid: entry map does not match order");
  const Shape& shape = entry_grids.front().shape();
  for (const auto& g : entry_grids)
    if (g.shape() != shape) throw std::invalid_argument("det_grid: entry grids differ in shape");
  for (std::size_t id : ids)
    if (id >= entry_grids.size()) throw std::invalid_argument("det_grid: entry id out of range");

  ModTensor out(shape);
  auto values = out.data();
  const auto r = static_cast<Eigen::Index>(order);
  sched.for_chunks(out.size(), [&](std::size_t begin, std::size_t end) {
    ModMatrix m(r, r);
    for (std::size_t node = begin; node < end; ++node) {
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) m(i, j) = entry_grids[ids[i * r + j]][node];
      values[node] = det_mod(m, p);
    }
    if (progress) progress(begin, end);
  });
  return out;
}

}  // namespace polydet
