#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mlas/bench.hpp"
#include "mlas/errors.hpp"
#include "mlas/exact.hpp"

namespace {

struct InstanceOpts {
  std::string path;
  std::string format = "orlib";
  int case_nr = 0;
  double d = 0.5;
  int gen_n = 0;
  double gen_d = 0.5;
  std::uint64_t gen_seed = 1;
};

void add_instance_opts(CLI::App* cmd, InstanceOpts& o) {
  cmd->add_option("--instance", o.path, "point file to load");
  cmd->add_option("--format", o.format, "point file format: orlib or csv")
      ->check(CLI::IsMember({"orlib", "csv"}));
  cmd->add_option("--case", o.case_nr, "1-based case number inside a multi-case orlib file");
  cmd->add_option("--d", o.d, "critical distance for a loaded file");
  cmd->add_option("--gen-n", o.gen_n, "generate a random instance with this many points");
  cmd->add_option("--gen-d", o.gen_d, "critical distance for a generated instance");
  cmd->add_option("--gen-seed", o.gen_seed, "seed for the generated instance");
}

std::shared_ptr<const mlas::Instance> make_from_opts(const InstanceOpts& o) {
  if (!o.path.empty()) {
    const auto fmt = o.format == "csv" ? mlas::PointFormat::csv : mlas::PointFormat::orlib;
    mlas::PointSet ps = mlas::load_points_file(o.path, fmt, o.case_nr);
    if (o.case_nr > 0) ps.source_id += "_nr" + std::to_string(o.case_nr);
    return mlas::make_instance(std::move(ps), o.d);
  }
  if (o.gen_n > 0) return mlas::generate_instance(o.gen_n, o.gen_d, o.gen_seed);
  throw mlas::Error("no instance given: use --instance or --gen-n");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mlas::Error("cannot write '" + path + "'");
  out << content;
}

// Funnels --params through the config parser so the CLI and the config file
// accept exactly the same keys.
void apply_params(mlas::BenchConfig& cfg, const std::vector<std::string>& params) {
  if (params.empty()) return;
  std::stringstream text;
  for (const auto& kv : params) {
    if (kv.find('=') == std::string::npos)
      throw mlas::Error("--params expects key=value, got '" + kv + "'");
    text << "param = " << kv << "\n";
  }
  const mlas::BenchConfig parsed = mlas::parse_bench_config(text);
  cfg.gls = parsed.gls;
  cfg.vns = parsed.vns;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-latency aggregation scheduling on unit disk graphs"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
  InstanceOpts solve_inst;
  add_instance_opts(solve, solve_inst);
  std::string solve_algo = "VNS";
  std::uint64_t solve_seed = 1;
  std::string solve_out, solve_dot, solve_trace, solve_times = "wall";
  std::vector<std::string> solve_params;
  solve->add_option("--algo", solve_algo, "H1, H2, H3, GLS1, GLS2, VNS or EXACT");
  solve->add_option("--seed", solve_seed, "random seed");
  solve->add_option("--out", solve_out, "write the schedule as JSON");
  solve->add_option("--dot", solve_dot, "write the scheduled tree as DOT");
  solve->add_option("--trace", solve_trace, "write the metaheuristic trace CSV");
  solve->add_option("--times", solve_times, "time columns: wall or zero")
      ->check(CLI::IsMember({"wall", "zero"}));
  solve->add_option("--params", solve_params, "algorithm parameters as key=value");

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment matrix from a config file");
  std::string bench_config, bench_out, bench_raw, bench_times;
  int bench_reps = 0;
  std::int64_t bench_seed = -1;
  bench->add_option("--config", bench_config, "config file")->required();
  bench->add_option("--out", bench_out, "summary CSV (overrides the config)");
  bench->add_option("--raw-out", bench_raw, "per-run CSV (overrides the config)");
  bench->add_option("--reps", bench_reps, "metaheuristic repetitions (overrides the config)");
  bench->add_option("--seed", bench_seed, "base seed (overrides the config)");
  bench->add_option("--times", bench_times, "time columns: wall or zero (overrides the config)")
      ->check(CLI::IsMember({"wall", "zero"}));

  // exact
  auto* exact = app.add_subcommand("exact", "exact optimum for a small instance");
  InstanceOpts exact_inst;
  add_instance_opts(exact, exact_inst);
  int exact_limit = 12;
  std::string exact_out, exact_dot;
  exact->add_option("--limit", exact_limit, "largest instance size accepted");
  exact->add_option("--out", exact_out, "write the witness schedule as JSON");
  exact->add_option("--dot", exact_dot, "write the witness tree as DOT");

  // render
  auto* render = app.add_subcommand("render", "run an algorithm and export the DOT drawing");
  InstanceOpts render_inst;
  add_instance_opts(render, render_inst);
  std::string render_algo = "H2", render_out;
  std::uint64_t render_seed = 1;
  render->add_option("--algo", render_algo, "algorithm to draw");
  render->add_option("--seed", render_seed, "random seed");
  render->add_option("--out", render_out, "DOT output path")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random connected point set");
  int gen_n = 10;
  double gen_d = 0.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "critical distance the set must be connected at")->required();
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      mlas::BenchConfig knobs;
      knobs.exact_limit = 12;
      apply_params(knobs, solve_params);
      const auto times = solve_times == "zero" ? mlas::TimeMode::zero : mlas::TimeMode::wall;
      auto inst = make_from_opts(solve_inst);
      const auto algo = mlas::algorithm_from_string(solve_algo);
      mlas::AlgoRun run = mlas::run_algorithm(inst, algo, solve_seed, knobs, times);
      const auto violations = mlas::validate_schedule(*inst, run.tree, run.schedule);
      if (!violations.empty())
        throw mlas::Error("invalid schedule: " + violations.front().to_string());
      std::cout << "instance=" << mlas::instance_id_for(*inst) << " algo=" << solve_algo
                << " L=" << run.length << " time_s="
                << (times == mlas::TimeMode::zero ? 0.0 : run.time_s) << "\n";
      if (!solve_out.empty()) write_file(solve_out, mlas::schedule_json(run.tree, run.schedule));
      if (!solve_dot.empty()) write_file(solve_dot, mlas::export_dot(run.tree, run.schedule));
      if (!solve_trace.empty()) write_file(solve_trace, run.trace_csv);
    } else if (bench->parsed()) {
      std::ifstream in(bench_config);
      if (!in) throw mlas::Error("cannot open '" + bench_config + "'");
      mlas::BenchConfig cfg = mlas::parse_bench_config(in);
      if (!bench_out.empty()) cfg.out = bench_out;
      if (!bench_raw.empty()) cfg.raw_out = bench_raw;
      if (bench_reps > 0) cfg.reps = bench_reps;
      if (bench_seed >= 0) cfg.seed = static_cast<std::uint64_t>(bench_seed);
      if (!bench_times.empty())
        cfg.times = bench_times == "zero" ? mlas::TimeMode::zero : mlas::TimeMode::wall;
      mlas::MatrixResult res = mlas::run_matrix(cfg);
      const std::string summary = mlas::reports_csv(res.reports, cfg.times);
      if (cfg.out.empty()) std::cout << summary;
      else write_file(cfg.out, summary);
      if (!cfg.raw_out.empty()) write_file(cfg.raw_out, mlas::raw_csv(res.raw, cfg.times));
    } else if (exact->parsed()) {
      auto inst = make_from_opts(exact_inst);
      mlas::ExactResult res = mlas::exact_min_latency(inst, exact_limit);
      std::cout << "instance=" << mlas::instance_id_for(*inst) << " L=" << res.length << "\n";
      if (!exact_out.empty()) write_file(exact_out, mlas::schedule_json(res.tree, res.schedule));
      if (!exact_dot.empty()) write_file(exact_dot, mlas::export_dot(res.tree, res.schedule));
    } else if (render->parsed()) {
      auto inst = make_from_opts(render_inst);
      mlas::BenchConfig knobs;
      mlas::AlgoRun run =
          mlas::run_algorithm(inst, mlas::algorithm_from_string(render_algo), render_seed, knobs);
      write_file(render_out, mlas::export_dot(run.tree, run.schedule));
      std::cout << "instance=" << mlas::instance_id_for(*inst) << " algo=" << render_algo
                << " L=" << run.length << " dot=" << render_out << "\n";
    } else if (gen->parsed()) {
      auto inst = mlas::generate_instance(gen_n, gen_d, gen_seed);
      std::ostringstream csv;
      csv << "x,y\n";
      for (int v = 0; v < inst->size(); ++v) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", inst->point(v).x, inst->point(v).y);
        csv << buf;
      }
      write_file(gen_out, csv.str());
      std::cout << "wrote " << inst->size() << " points to " << gen_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
