#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "polydet/modarith.hpp"
#include "polydet/parallel.hpp"
#include "polydet/tensor.hpp"

namespace polydet {

using ModMatrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct PivotRecord {
  std::size_t step = 0;
  Residue value = 0;       // first non-zero entry of the step's row
  std::size_t column = 0;  // its column
};

struct DetTrace {
  Residue det = 0;
  std::vector<PivotRecord> pivots;  // empty tail if a zero row ended the run
  bool odd_permutation = false;
};

/// Determinant over Z/pZ by condensation. Row i's first non-zero entry z_i at
/// column c_i eliminates column c_i from every later row via
/// row_j <- z_i * row_j - M[j, c_i] * row_i. Each step scales the working
/// determinant by z_i^(r-1-i); the result divides that back out and applies
/// the sign of the pivot-column permutation. Entries must lie in [0, p).
Residue det_mod(ModMatrix m, Residue p);
DetTrace det_mod_trace(ModMatrix m, Residue p);

/// Determinant at every interpolation node. `entry_grids[ids[i*r + j]]` is the
/// value grid of entry (i, j); all grids share one shape, and so does the
/// result. `progress(begin, end)` runs after each finished node chunk.
/// Throws std::invalid_argument on shape mismatch.
ModTensor det_grid(std::span<const ModTensor> entry_grids, std::span<const std::size_t> ids, std::size_t order,
                   Residue p, const Scheduler& sched = Scheduler{},
                   const std::function<void(std::size_t, std::size_t)>& progress = {});

}  // namespace polydet
