// polydet: exact determinants and resultants of polynomial matrices.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polydet/polydet.hpp"

namespace {

using namespace polydet;

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kPlan = 3, kWorkspace = 4 };

struct RunOptions {
  std::string workspace;
  std::size_t primes_min = 2;
  std::uint64_t prime_start = 1'000'000'000;
  unsigned threads = 1;
  std::size_t chunk = 0;
  bool report = false;
  std::string report_json;
};

void add_run_options(CLI::App* cmd, RunOptions& opts, bool with_workspace = true) {
  if (with_workspace) cmd->add_option("--workspace", opts.workspace, "checkpoint directory (enables resume)");
  cmd->add_option("--primes-min", opts.primes_min, "minimum number of primes")->check(CLI::PositiveNumber);
  cmd->add_option("--prime-start", opts.prime_start, "smallest prime candidate");
  cmd->add_option("--threads", opts.threads, "worker threads, 0 = all cores");
  cmd->add_option("--chunk", opts.chunk, "work units per scheduling chunk, 0 = automatic");
  cmd->add_flag("--report", opts.report, "print stage timings and primes to stderr");
  cmd->add_option("--report-json", opts.report_json, "write the run report as JSON to this file");
}

PipelineConfig to_config(const RunOptions& opts) {
  PipelineConfig config;
  config.primes_min = opts.primes_min;
  config.prime_start = opts.prime_start;
  config.threads = opts.threads;
  config.chunk = opts.chunk;
  if (!opts.workspace.empty()) config.workspace = opts.workspace;
  return config;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_report(const RunResult& r, const RunOptions& opts) {
  const Plan& plan = r.plan;
  if (opts.report) {
    std::ostringstream os;
    os << std::left;
    os << std::setw(8) << "order" << plan.order << '\n';
    os << std::setw(8) << "unique" << plan.unique_entries << " of " << plan.order * plan.order << " (mu "
       << plan.mu << ")\n";
    os << std::setw(8) << "nodes";
    for (std::size_t k = 0; k < plan.nodes.size(); ++k) os << (k ? " x " : "") << plan.nodes[k];
    os << " = " << plan.node_count << '\n';
    os << std::setw(8) << "bound" << plan.boundary << '\n';
    os << std::setw(8) << "primes";
    for (const auto& p : plan.primes) os << p.p << ' ';
    os << '\n';
    os << std::fixed << std::setprecision(6);
    os << std::setw(8) << "FFT(s)" << r.times.fft << "  (" << r.stats.fft_computed << " transforms, "
       << r.stats.fft_loaded << " reused)\n";
    os << std::setw(8) << "DET(s)" << r.times.det << '\n';
    os << std::setw(8) << "IFFT(s)" << r.times.ifft << '\n';
    os << std::setw(8) << "CRT(s)" << r.times.crt << '\n';
    std::cerr << os.str();
  }
  if (!opts.report_json.empty()) {
    nlohmann::json j;
    j["order"] = plan.order;
    j["unique_entries"] = plan.unique_entries;
    j["mu"] = plan.mu;
    j["nodes"] = plan.nodes;
    j["degree_bounds"] = plan.degree_bounds;
    j["boundary"] = plan.boundary.str();
    for (const auto& p : plan.primes) j["primes"].push_back(p.p);
    j["seconds"] = {{"FFT", r.times.fft}, {"DET", r.times.det}, {"IFFT", r.times.ifft}, {"CRT", r.times.crt}};
    j["units"] = {{"fft_computed", r.stats.fft_computed},
                  {"fft_reused", r.stats.fft_loaded},
                  {"det_computed", r.stats.det_computed},
                  {"ifft_computed", r.stats.ifft_computed},
                  {"crt_computed", r.stats.crt_computed}};
    j["determinant"] = format_polynomial(r.determinant, r.vars);
    std::ofstream out(opts.report_json);
    if (!out) throw std::runtime_error("cannot write " + opts.report_json);
    out << j.dump(2) << '\n';
  }
}

int finish(const RunResult& r, const RunOptions& opts) {
  std::cout << format_polynomial(r.determinant, r.vars) << '\n';
  write_report(r, opts);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact determinants of polynomial matrices by evaluation, modular determinants and CRT"};
  app.require_subcommand(1);

  RunOptions det_opts;
  std::string det_in;
  auto* det = app.add_subcommand("det", "determinant of a matrix document");
  det->add_option("--in", det_in, "matrix document, '-' for stdin")->required();
  add_run_options(det, det_opts);

  RunOptions res_opts;
  std::string res_vars, res_f, res_g, res_var;
  auto* res = app.add_subcommand("resultant", "resultant of two polynomials via their Sylvester matrix");
  res->add_option("--vars", res_vars, "declared variables, space separated")->required();
  res->add_option("--f", res_f, "first polynomial")->required();
  res->add_option("--g", res_g, "second polynomial")->required();
  res->add_option("--var", res_var, "variable to eliminate")->required();
  add_run_options(res, res_opts);

  std::vector<std::uint64_t> orders = {64, 128, 256, 512, 4096, 8192, 65536};
  std::size_t census_count = 10000;
  std::uint64_t census_above = 1'000'000'000;
  bool census_detail = false;
  auto* cen = app.add_subcommand("census", "count primes admitting roots of unity of each order");
  cen->add_option("--orders", orders, "comma separated orders")->delimiter(',');
  cen->add_option("--count", census_count, "number of primes to scan")->check(CLI::PositiveNumber);
  cen->add_option("--above", census_above, "scan primes strictly above this value");
  cen->add_flag("--detail", census_detail, "also print counts with exact two-adic valuation");

  RunOptions pred_opts;
  std::string pred_in;
  std::size_t pred_sample = 3;
  auto* pred = app.add_subcommand("predict", "predict total transform time from sampled entries");
  pred->add_option("--in", pred_in, "matrix document, '-' for stdin")->required();
  pred->add_option("--sample", pred_sample, "entries to time")->check(CLI::PositiveNumber);
  pred->add_option("--primes-min", pred_opts.primes_min, "minimum number of primes")->check(CLI::PositiveNumber);

  RunOptions resume_opts;
  auto* rsm = app.add_subcommand("resume", "continue an interrupted run from its workspace");
  rsm->add_option("--workspace", resume_opts.workspace, "checkpoint directory")->required();
  add_run_options(rsm, resume_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*det) {
      const PolyMatrix m = parse_matrix(read_input(det_in));
      return finish(run(m, to_config(det_opts)), det_opts);
    }
    if (*res) {
      std::vector<std::string> vars;
      std::istringstream names(res_vars);
      for (std::string v; names >> v;) vars.push_back(v);
      auto it = std::find(vars.begin(), vars.end(), res_var);
      if (it == vars.end()) {
        std::cerr << "error: --var " << res_var << " is not among --vars\n";
        return kUsage;
      }
      const Polynomial f = parse_polynomial(res_f, vars);
      const Polynomial g = parse_polynomial(res_g, vars);
      const PolyMatrix m = sylvester(f, g, static_cast<std::size_t>(it - vars.begin()), vars);
      return finish(run(m, to_config(res_opts)), res_opts);
    }
    if (*cen) {
      const auto rows = census(orders, census_count, census_above);
      for (std::size_t k = 0; k < rows.size(); ++k) std::cout << (k ? " " : "") << rows[k].divisible;
      std::cout << '\n';
      if (census_detail) {
        std::cout << std::left << std::setw(10) << "order" << std::setw(12) << "N | p-1" << "v2(p-1) = log2 N\n";
        for (const auto& row : rows)
          std::cout << std::setw(10) << row.order << std::setw(12) << row.divisible << row.exact << '\n';
      }
      return kOk;
    }
    if (*pred) {
      const PolyMatrix m = parse_matrix(read_input(pred_in));
      const Plan plan = make_plan(m, to_config(pred_opts));
      const Prediction p = predict(m, plan, pred_sample);
      std::cout << std::fixed << std::setprecision(2);
      std::cout << "primes " << p.primes << "\norder " << p.order << "\nmu " << p.mu << "\nmean_entry_seconds "
                << p.mean_seconds << "\npredicted_seconds " << p.total_seconds << '\n';
      return kOk;
    }
    if (*rsm) {
      PipelineConfig config = to_config(resume_opts);
      return finish(resume(resume_opts.workspace, config), resume_opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PlanError& e) {
    std::cerr << "planning failed: " << e.what() << '\n';
    return kPlan;
  } catch (const WorkspaceError& e) {
    std::cerr << "workspace error: " << e.what() << '\n';
    return kWorkspace;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
