#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polydet/errors.hpp"
#include "polydet/modarith.hpp"
#include "polydet/polynomial.hpp"

namespace polydet {

/// Everything fixed before the first transform: bounds, node grid, primes.
struct Plan {
  std::size_t order = 0;
  std::size_t nvars = 0;
  std::vector<unsigned> entry_degrees;  // max entry degree per variable
  std::vector<unsigned> degree_bounds;  // D_i, bound on the determinant's degree
  Shape nodes;                          // N_i = next power of two >= D_i + 1
  std::size_t node_count = 0;
  unsigned q_max = 0;
  BigInt boundary;  // bound on |coefficient| of the determinant
  std::vector<PrimeSpec> primes;
  std::size_t unique_entries = 0;
  double mu = 1.0;  // unique_entries / order^2

  BigInt prime_product() const;
};

/// r! * prod_i max_j ||M_ij||_1.
BigInt coefficient_bound(const PolyMatrix& m);

/// D_v = sum over rows of max over columns of deg_v(M_ij).
std::vector<unsigned> degree_bound(const PolyMatrix& m);

struct Checkpoint {
  std::string_view stage;  // "fft", "det", "ifft", "crt"
  std::size_t prime = 0;
  std::size_t unit = 0;    // entry id for fft, first node for det progress
  bool committed = false;  // false for in-stage progress notifications
};

struct PipelineConfig {
  unsigned threads = 1;  // 0 = hardware concurrency
  std::size_t chunk = 0;  // 0 = automatic
  std::size_t primes_min = 2;
  std::uint64_t prime_start = 1'000'000'000;
  std::uint64_t prime_limit = kModulusLimit;
  std::optional<std::filesystem::path> workspace;

  /// Called after each committed unit and at determinant chunk boundaries.
  /// Throwing aborts the run; committed units survive in the workspace.
  std::function<void(const Checkpoint&)> on_checkpoint;
};

/// Throws PlanError (with the shortfall) when no prime set fits the window.
Plan make_plan(const PolyMatrix& m, const PipelineConfig& config);

/// Settings and planned values as stored in the workspace's plan.txt.
std::string plan_text(const Plan& plan, const PipelineConfig& config);

struct StageTimes {
  double fft = 0, det = 0, ifft = 0, crt = 0;
};

struct RunStats {
  std::size_t fft_computed = 0;
  std::size_t fft_loaded = 0;
  std::size_t det_computed = 0;
  std::size_t ifft_computed = 0;
  std::size_t crt_computed = 0;
};

struct RunResult {
  Plan plan;
  CoeffTensor coefficients;  // shape plan.nodes, axes in variable order
  Polynomial determinant;
  std::vector<std::string> vars;
  std::vector<ModTensor> residues;  // per-prime determinant coefficients
  StageTimes times;
  RunStats stats;
};

/// Exact determinant: per prime reduce, forward-transform each unique entry,
/// take determinants at every node, interpolate back; then combine across
/// primes. With a workspace, completed units are reused and new ones are
/// checkpointed.
RunResult run(const PolyMatrix& m, const PipelineConfig& config);

/// Continues the run recorded in `workspace`. Planning settings come from the
/// workspace; config supplies threads, chunking and the hook.
RunResult resume(const std::filesystem::path& workspace, PipelineConfig config = {});

struct Prediction {
  std::size_t primes = 0;
  std::size_t order = 0;
  double mu = 1.0;
  std::vector<double> sample_seconds;
  double mean_seconds = 0;  // rounded half away from zero to 0.01 s
  double total_seconds = 0;
};

/// T = primes * order^2 * round(mean, 2) * mu.
double predicted_time(std::size_t primes, std::size_t order, double mean_seconds, double mu);

/// Times forward transforms of up to sample_size unique entries under the
/// plan's first prime and applies predicted_time.
Prediction predict(const PolyMatrix& m, const Plan& plan, std::size_t sample_size);

}  // namespace polydet
