#include "polydet/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "polydet/moddet.hpp"
#include "polydet/ntt.hpp"
#include "polydet/reconstruct.hpp"
#include "polydet/text.hpp"
#include "polydet/workspace.hpp"

namespace polydet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string unit_key(std::string_view stage, std::size_t prime) {
  return std::string(stage) + "/p" + std::to_string(prime);
}

std::string fft_key(std::size_t prime, std::size_t entry) {
  return unit_key("fft", prime) + "/e" + std::to_string(entry);
}

std::string format_coefficients(const CoeffTensor& t) {
  std::ostringstream os;
  os << "shape";
  for (std::size_t n : t.shape()) os << ' ' << n;
  os << '\n';
  for (const auto& c : t.data()) os << c << '\n';
  return os.str();
}

CoeffTensor parse_coefficients(const std::string& text, const Shape& expected) {
  std::istringstream in(text);
  std::string tag;
  in >> tag;
  Shape shape(expected.size());
  for (auto& n : shape) in >> n;
  if (tag != "shape" || !in || shape != expected) throw WorkspaceError("checkpoint invalid: result shape mismatch");
  std::vector<BigInt> coeffs(shape_size(shape));
  std::string word;
  for (auto& c : coeffs) {
    if (!(in >> word)) throw WorkspaceError("checkpoint invalid: truncated result");
    c = BigInt(word);
  }
  std::vector<std::size_t> axes(shape.size());
  std::iota(axes.begin(), axes.end(), std::size_t{0});
  return CoeffTensor(shape, std::move(axes), std::move(coeffs));
}

// Serializes workspace commits and checkpoint notifications across workers.
class Recorder {
 public:
  Recorder(Workspace* ws, const PipelineConfig& config) : ws_(ws), config_(config) {}

  bool done(const std::string& key) const { return ws_ && ws_->done(key); }
  Workspace* workspace() const { return ws_; }

  void commit_grid(const std::string& key, const ModTensor& t, Residue p, const Checkpoint& cp) {
    std::lock_guard lock(mutex_);
    if (ws_) ws_->store(key, t, p);
    notify_locked(cp);
  }

  void commit_text(const std::string& key, std::string_view text, const Checkpoint& cp) {
    std::lock_guard lock(mutex_);
    if (ws_) ws_->store_text(key, text);
    notify_locked(cp);
  }

  void notify(const Checkpoint& cp) {
    std::lock_guard lock(mutex_);
    notify_locked(cp);
  }

 private:
  void notify_locked(const Checkpoint& cp) {
    if (config_.on_checkpoint) config_.on_checkpoint(cp);
  }

  Workspace* ws_;
  const PipelineConfig& config_;
  std::mutex mutex_;
};

RunResult execute(const PolyMatrix& m, Plan plan, const PipelineConfig& config, Workspace* ws) {
  RunResult result;
  result.vars = m.vars();
  const Scheduler sched(config.threads, config.chunk);
  const Scheduler serial(1, 0);
  Recorder recorder(ws, config);

  const auto& unique = m.unique_entries();
  std::vector<CoeffTensor> entry_tensors;  // built on first use
  auto encoded = [&](std::size_t e) -> const CoeffTensor& {
    if (entry_tensors.empty()) {
      entry_tensors.reserve(unique.size());
      for (const auto& poly : unique) entry_tensors.push_back(poly.to_tensor(plan.nodes));
    }
    return entry_tensors[e];
  };

  const bool have_result = recorder.done("crt");
  result.residues.resize(plan.primes.size());
  for (std::size_t pi = 0; pi < plan.primes.size() && !have_result; ++pi) {
    const PrimeSpec& prime = plan.primes[pi];
    const Residue p = prime.p;
    const std::string ifft_key = unit_key("ifft", pi);
    if (recorder.done(ifft_key)) {
      result.residues[pi] = ws->load(ifft_key, p);
      continue;
    }

    const TwiddleTable table(prime, plan.q_max);
    const std::string det_key = unit_key("det", pi);
    ModTensor values;
    if (recorder.done(det_key)) {
      values = ws->load(det_key, p);
    } else {
      auto start = Clock::now();
      std::vector<ModTensor> grids(unique.size());
      std::size_t loaded = 0;
      for (std::size_t e = 0; e < unique.size(); ++e) {
        if (recorder.done(fft_key(pi, e))) {
          grids[e] = ws->load(fft_key(pi, e), p);
          ++loaded;
        }
      }
      result.stats.fft_loaded += loaded;
      if (loaded < unique.size()) encoded(0);
      std::mutex count_mutex;
      sched.for_each(unique.size(), [&](std::size_t e) {
        if (!grids[e].data().empty()) return;
        grids[e] = ntt_forward_multi(reduce_mod(encoded(e), p), table, serial);
        recorder.commit_grid(fft_key(pi, e), grids[e], p, {"fft", pi, e, true});
        std::lock_guard lock(count_mutex);
        ++result.stats.fft_computed;
      });
      result.times.fft += seconds_since(start);

      start = Clock::now();
      values = det_grid(grids, m.ids(), m.order(), p, sched, [&](std::size_t begin, std::size_t) {
        recorder.notify({"det", pi, begin, false});
      });
      recorder.commit_grid(det_key, values, p, {"det", pi, 0, true});
      ++result.stats.det_computed;
      result.times.det += seconds_since(start);
    }

    auto start = Clock::now();
    result.residues[pi] = ntt_inverse_multi(values, table, sched);
    recorder.commit_grid(ifft_key, result.residues[pi], p, {"ifft", pi, 0, true});
    ++result.stats.ifft_computed;
    result.times.ifft += seconds_since(start);
  }

  if (have_result) {
    result.coefficients = parse_coefficients(ws->load_text("crt"), plan.nodes);
    for (std::size_t pi = 0; pi < plan.primes.size(); ++pi)
      if (ws->done(unit_key("ifft", pi))) result.residues[pi] = ws->load(unit_key("ifft", pi), plan.primes[pi].p);
  } else {
    auto start = Clock::now();
    std::vector<Residue> moduli;
    for (const auto& prime : plan.primes) moduli.push_back(prime.p);
    const CrtBasis basis(moduli);
    result.coefficients = combine_tensor(result.residues, basis, sched);
    recorder.commit_text("crt", format_coefficients(result.coefficients), {"crt", 0, 0, true});
    ++result.stats.crt_computed;
    result.times.crt += seconds_since(start);
  }

  result.determinant = Polynomial::from_tensor(result.coefficients);
  result.plan = std::move(plan);
  return result;
}

std::map<std::string, std::string> read_settings(const std::string& text) {
  std::map<std::string, std::string> settings;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto space = line.find(' ');
    if (space == std::string::npos) continue;
    settings[line.substr(0, space)] = line.substr(space + 1);
  }
  return settings;
}

}  // namespace

BigInt Plan::prime_product() const {
  BigInt product = 1;
  for (const auto& prime : primes) product *= prime.p;
  return product;
}

BigInt coefficient_bound(const PolyMatrix& m) {
  BigInt bound = 1;
  for (std::size_t k = 2; k <= m.order(); ++k) bound *= k;
  for (std::size_t i = 0; i < m.order(); ++i) {
    BigInt row_max = 0;
    for (std::size_t j = 0; j < m.order(); ++j) row_max = std::max(row_max, m(i, j).l1_norm());
    bound *= row_max;
  }
  return bound;
}

std::vector<unsigned> degree_bound(const PolyMatrix& m) {
  std::vector<unsigned> bounds(m.nvars(), 0);
  for (std::size_t v = 0; v < m.nvars(); ++v) {
    for (std::size_t i = 0; i < m.order(); ++i) {
      unsigned row_max = 0;
      for (std::size_t j = 0; j < m.order(); ++j) row_max = std::max(row_max, m(i, j).degree(v));
      bounds[v] += row_max;
    }
  }
  return bounds;
}

Plan make_plan(const PolyMatrix& m, const PipelineConfig& config) {
  Plan plan;
  plan.order = m.order();
  plan.nvars = m.nvars();
  plan.entry_degrees.assign(m.nvars(), 0);
  for (const auto& e : m.unique_entries())
    for (std::size_t v = 0; v < m.nvars(); ++v) plan.entry_degrees[v] = std::max(plan.entry_degrees[v], e.degree(v));
  plan.degree_bounds = degree_bound(m);

  std::vector<std::size_t> required;
  for (unsigned d : plan.degree_bounds) required.push_back(std::size_t{d} + 1);
  PaddedShape padded = pad_shape(required);
  plan.nodes = padded.shape;
  plan.node_count = shape_size(plan.nodes);
  plan.q_max = padded.q_max;
  plan.boundary = coefficient_bound(m);
  plan.unique_entries = m.unique_count();
  plan.mu = m.replication();

  PrimeSearch search;
  search.q = plan.q_max;
  search.min_product = 2 * plan.boundary + 1;
  search.start = config.prime_start;
  search.limit = config.prime_limit;
  search.min_count = std::max<std::size_t>(2, config.primes_min);
  try {
    plan.primes = find_fourier_primes(search);
  } catch (const InsufficientPrimes& e) {
    throw PlanError(e.what());
  } catch (const std::invalid_argument& e) {
    throw PlanError(e.what());
  }
  return plan;
}

std::string plan_text(const Plan& plan, const PipelineConfig& config) {
  std::ostringstream os;
  os << "primes_min " << config.primes_min << '\n';
  os << "prime_start " << config.prime_start << '\n';
  os << "prime_limit " << config.prime_limit << '\n';
  os << "order " << plan.order << '\n';
  os << "nodes";
  for (std::size_t n : plan.nodes) os << ' ' << n;
  os << '\n';
  os << "boundary " << plan.boundary << '\n';
  os << "primes";
  for (const auto& prime : plan.primes) os << ' ' << prime.p;
  os << '\n';
  return os.str();
}

RunResult run(const PolyMatrix& m, const PipelineConfig& config) {
  Plan plan = make_plan(m, config);
  if (!config.workspace) return execute(m, std::move(plan), config, nullptr);
  Workspace ws = Workspace::open(*config.workspace, format_matrix(m), plan_text(plan, config));
  return execute(m, std::move(plan), config, &ws);
}

RunResult resume(const std::filesystem::path& workspace, PipelineConfig config) {
  Workspace attached = Workspace::attach(workspace);
  const PolyMatrix m = parse_matrix(attached.input_text());
  const auto settings = read_settings(attached.plan_text());
  try {
    config.primes_min = std::stoull(settings.at("primes_min"));
    config.prime_start = std::stoull(settings.at("prime_start"));
    config.prime_limit = std::stoull(settings.at("prime_limit"));
  } catch (const std::exception&) {
    throw WorkspaceError("checkpoint invalid: unreadable plan settings");
  }
  config.workspace = workspace;
  return run(m, config);
}

double predicted_time(std::size_t primes, std::size_t order, double mean_seconds, double mu) {
  const auto cents = static_cast<double>(std::llround(mean_seconds * 100.0));
  return static_cast<double>(primes * order * order) * cents * mu / 100.0;
}

Prediction predict(const PolyMatrix& m, const Plan& plan, std::size_t sample_size) {
  if (sample_size == 0) throw std::invalid_argument("predict: sample size must be positive");
  Prediction out;
  out.primes = plan.primes.size();
  out.order = plan.order;
  out.mu = plan.mu;

  const PrimeSpec& prime = plan.primes.front();
  const TwiddleTable table(prime, plan.q_max);
  const auto& unique = m.unique_entries();
  const std::size_t samples = std::min(sample_size, unique.size());
  for (std::size_t e = 0; e < samples; ++e) {
    const auto start = Clock::now();
    ModTensor grid = ntt_forward_multi(reduce_mod(unique[e].to_tensor(plan.nodes), prime.p), table);
    out.sample_seconds.push_back(seconds_since(start));
  }
  double mean = 0;
  for (double t : out.sample_seconds) mean += t;
  mean /= static_cast<double>(out.sample_seconds.size());
  out.mean_seconds = std::round(mean * 100.0) / 100.0;
  out.total_seconds = predicted_time(out.primes, out.order, mean, out.mu);
  return out;
}

}  // namespace polydet
