#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracle.hpp"
#include "polydet/pipeline.hpp"
#include "polydet/sylvester.hpp"
#include "polydet/text.hpp"
#include "polydet/workspace.hpp"

using namespace polydet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("polydet_test_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t nv, unsigned deg, int coeff) {
  std::vector<Polynomial> entries;
  for (std::size_t k = 0; k < r * r; ++k) entries.push_back(oracle::random_poly(rng, nv, deg, coeff, 0.4));
  return PolyMatrix(oracle::var_names(nv), r, entries);
}

std::string det_text(const PolyMatrix& m, const PipelineConfig& config = {}) {
  RunResult r = run(m, config);
  return format_polynomial(r.determinant, r.vars);
}

struct Interrupt {};

}  // namespace

TEST_CASE("coefficient bound") {
  CHECK(coefficient_bound(parse_matrix("vars x\n3*x + 4\n")) == 7);
  CHECK(coefficient_bound(parse_matrix("vars x\nx+1 ; x+1\nx+1 ; x+1\n")) == 8);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    PolyMatrix m = random_matrix(rng, 3, 2, 2, 9);
    BigInt largest = 0;
    for (const auto& [e, c] : oracle::symbolic_det(m)) largest = std::max(largest, BigInt(abs(c)));
    CHECK(coefficient_bound(m) >= largest);
  }
}

TEST_CASE("degree bound") {
  CHECK(degree_bound(parse_matrix("vars x y\nx^3*y + y^2\n")) == std::vector<unsigned>{3, 2});
  PolyMatrix m = parse_matrix("vars x\nx^2 ; x\nx ; x^3\n");
  CHECK(degree_bound(m) == std::vector<unsigned>{5});
  CHECK(det_text(m) == "x^5 - x^2");
  CHECK(degree_bound(parse_matrix("vars x\n0 ; 0\n0 ; 0\n")) == std::vector<unsigned>{0});

  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    PolyMatrix m = random_matrix(rng, 3, 2, 3, 5);
    auto bounds = degree_bound(m);
    for (const auto& [e, c] : oracle::symbolic_det(m))
      for (std::size_t v = 0; v < 2; ++v) CHECK(e[v] <= bounds[v]);
  }
}

TEST_CASE("plans") {
  Plan one = make_plan(parse_matrix("vars x\nx\n"), {});
  CHECK(one.boundary == 1);
  CHECK(one.nodes == Shape{2});
  CHECK(one.primes.size() == 2);
  for (const auto& p : one.primes) CHECK(p.p % 2 == 1);

  Plan two = make_plan(parse_matrix("vars x y\nx^3*y^3 ; x\ny ; x^3 + y^3\n"), {});
  CHECK(two.degree_bounds == std::vector<unsigned>{6, 6});
  CHECK(two.nodes == Shape{8, 8});
  CHECK(two.q_max == 3);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    PolyMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 3, 4, 100);
    Plan plan = make_plan(m, {});
    CHECK(plan.prime_product() >= 2 * plan.boundary + 1);
    CHECK(plan.primes.size() >= 2);
    CHECK(plan.mu > 0);
    CHECK(plan.mu <= 1);
    for (std::size_t v = 0; v < plan.nodes.size(); ++v) {
      CHECK(plan.nodes[v] >= plan.degree_bounds[v] + 1);
      CHECK(plan.nodes[v] < 2 * (plan.degree_bounds[v] + 1));
    }
    for (const auto& p : plan.primes) {
      CHECK(p.valid());
      CHECK(p.q >= plan.q_max);
    }
  }

  PipelineConfig tight;
  tight.prime_start = 1'000'000'000;
  tight.prime_limit = 1'000'000'008;  // only 1000000007 fits
  CHECK_THROWS_AS(make_plan(parse_matrix("vars x\nx\n"), tight), PlanError);
}

TEST_CASE("small determinants") {
  CHECK(det_text(parse_matrix("vars x\nx\n")) == "x");
  CHECK(det_text(parse_matrix("vars x y\nx ; y\n1 ; x\n")) == "x^2 - y");
  CHECK(det_text(parse_matrix("vars x\n0\n")) == "0");
  CHECK(det_text(parse_matrix("vars x\n-5\n")) == "-5");
}

TEST_CASE("random matrices against symbolic expansion") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    const std::size_t r = 1 + rng() % 4, nv = 1 + rng() % 3;
    PolyMatrix m = random_matrix(rng, r, nv, 1 + rng() % 3, 100);
    RunResult res = run(m, {});
    CHECK(oracle::to_poly(res.determinant) == oracle::symbolic_det(m));
    // each stored residue tensor is the determinant reduced mod its prime
    for (std::size_t i = 0; i < res.plan.primes.size(); ++i)
      CHECK(reduce_mod(res.coefficients, res.plan.primes[i].p) == res.residues[i]);
  }
}

TEST_CASE("prime set does not change the result") {
  std::mt19937_64 rng(5);
  PolyMatrix m = random_matrix(rng, 3, 2, 3, 100);
  PipelineConfig a, b, c;
  b.prime_start = 3'000'000'000ull;
  c.primes_min = 5;
  c.prime_start = 1ull << 40;
  const std::string ref = det_text(m, a);
  CHECK(det_text(m, b) == ref);
  CHECK(det_text(m, c) == ref);
}

TEST_CASE("resultants through the Sylvester path") {
  std::vector<std::string> xs = {"x"};
  auto res = [&](const char* f, const char* g) {
    PolyMatrix s = sylvester(parse_polynomial(f, xs), parse_polynomial(g, xs), 0, xs);
    return det_text(s);
  };
  CHECK(res("x^2 + 1", "x + 1") == "2");
  CHECK(res("x^2 - 1", "x - 1") == "0");

  std::vector<std::string> vars = {"x", "u", "v"};
  PolyMatrix s = sylvester(parse_polynomial("x + u", vars), parse_polynomial("x + v", vars), 0, vars);
  RunResult r = run(s, {});
  CHECK(format_polynomial(r.determinant, r.vars) == "-u + v");
}

TEST_CASE("workspace run, interrupt and resume") {
  std::mt19937_64 rng(6);
  PolyMatrix m = random_matrix(rng, 3, 2, 2, 50);
  const RunResult fresh = run(m, {});

  SUBCASE("interrupt after every FFT of prime 0") {
    TempDir dir("fft0");
    PipelineConfig config;
    config.workspace = dir.path;
    config.on_checkpoint = [&](const Checkpoint& cp) {
      if (cp.stage == "det" && cp.prime == 0 && !cp.committed) throw Interrupt{};
    };
    CHECK_THROWS_AS(run(m, config), Interrupt);
    RunResult resumed = resume(dir.path);
    CHECK(resumed.stats.fft_loaded == m.unique_count());
    CHECK(resumed.coefficients == fresh.coefficients);
  }
  SUBCASE("interrupt part way through the FFT stage") {
    TempDir dir("mid");
    PipelineConfig config;
    config.workspace = dir.path;
    int commits = 0;
    config.on_checkpoint = [&](const Checkpoint& cp) {
      if (cp.committed && ++commits == 3) throw Interrupt{};
    };
    CHECK_THROWS_AS(run(m, config), Interrupt);
    RunResult resumed = resume(dir.path);
    CHECK(resumed.stats.fft_loaded == 3);
    CHECK(resumed.coefficients == fresh.coefficients);
  }
  SUBCASE("completed workspace returns the stored result") {
    TempDir dir("done");
    PipelineConfig config;
    config.workspace = dir.path;
    run(m, config);
    RunResult again = resume(dir.path);
    CHECK(again.stats.fft_computed == 0);
    CHECK(again.stats.det_computed == 0);
    CHECK(again.stats.ifft_computed == 0);
    CHECK(again.stats.crt_computed == 0);
    CHECK(again.coefficients == fresh.coefficients);
  }
  SUBCASE("stale and corrupt workspaces") {
    TempDir dir("stale");
    PipelineConfig config;
    config.workspace = dir.path;
    run(m, config);
    PolyMatrix other = random_matrix(rng, 2, 2, 2, 50);
    CHECK_THROWS_WITH_AS(run(other, config), "stale workspace", WorkspaceError);

    // flip one byte of a residue artifact
    fs::path artifact = dir.path / "ifft_p0.bin";
    std::string bytes = read_file(artifact);
    bytes.back() ^= 1;
    write_file_atomic(artifact, bytes);
    // the finished result no longer depends on it, so drop the CRT entry too
    fs::remove(dir.path / "crt.txt");
    CHECK_THROWS_AS(resume(dir.path), WorkspaceError);
  }
}

TEST_CASE("artifact format") {
  ModTensor t({2, 3});
  for (std::size_t i = 0; i < 6; ++i) t[i] = i * 10;
  const std::string bytes = encode_artifact(t, 97);
  CHECK(bytes.substr(0, 8) == "PDETGRID");
  CHECK(bytes.size() == 8 + 4 + 4 + 8 + 2 * 8 + 2 * 8 + 6 * 8);
  CHECK(static_cast<unsigned char>(bytes[8]) == 1);  // version, little-endian
  Residue modulus = 0;
  CHECK(decode_artifact(bytes, &modulus) == t);
  CHECK(modulus == 97);
  CHECK_THROWS_AS(decode_artifact(bytes.substr(0, bytes.size() - 1)), WorkspaceError);
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_artifact(bad), WorkspaceError);
}

TEST_CASE("prediction formula") {
  CHECK(predicted_time(6, 16, 1.36, 1.0) == 2088.96);
  CHECK(predicted_time(6, 16, 1.364, 1.0) == 2088.96);
  CHECK(predicted_time(2, 4, 0.5, 1.0 / 16) == doctest::Approx(2 * 0.5));

  PolyMatrix same = parse_matrix("vars x\nx+1 ; x+1\nx+1 ; x+1\n");
  CHECK(same.replication() == doctest::Approx(0.25));
  PolyMatrix distinct = parse_matrix("vars x\nx ; 1\n2 ; x^2\n");
  CHECK(distinct.replication() == 1.0);

  Plan plan = make_plan(distinct, {});
  Prediction p = predict(distinct, plan, 3);
  CHECK(p.sample_seconds.size() == 3);
  CHECK(p.total_seconds == predicted_time(p.primes, p.order, p.mean_seconds, p.mu));
}
