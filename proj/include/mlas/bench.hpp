#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlas/gls.hpp"
#include "mlas/instance.hpp"
#include "mlas/scheduler.hpp"
#include "mlas/vns.hpp"

namespace mlas {

enum class Algorithm { H1, H2, H3, GLS1, GLS2, VNS, EXACT };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct RunRecord {
  std::string instance_id;
  Algorithm algorithm = Algorithm::H1;
  std::uint64_t seed = 0;
  int sl = 0;
  double time_s = 0.0;
};

struct RunReport {
  std::string instance_id;
  Algorithm algorithm = Algorithm::H1;
  int runs = 0;
  int sl_best = 0;
  double sl_av = 0.0;
  double sl_sd = 0.0;
  std::optional<double> opt_pct;  // only when the exact length is known
  double time_av_s = 0.0;
};

// zero blanks every time field so outputs can be compared byte for byte.
enum class TimeMode { wall, zero };

struct InstanceSpec {
  std::string path;
  PointFormat format = PointFormat::orlib;
  int case_nr = 0;  // 0: plain single-set file
  double d = 0.5;
};

struct GenSpec {
  int n = 10;
  double d = 0.5;
  std::uint64_t seed = 1;
};

struct BenchConfig {
  std::vector<InstanceSpec> files;
  std::vector<GenSpec> generated;
  std::vector<Algorithm> algorithms;
  int reps = 20;
  std::uint64_t seed = 1;
  GlsParams gls;
  VnsParams vns;
  int exact_limit = 12;
  TimeMode times = TimeMode::wall;
  std::string out;
  std::string raw_out;
};

// Line-based "key = value" text; see the README for the full syntax.
BenchConfig parse_bench_config(std::istream& in);

struct MatrixResult {
  std::vector<RunReport> reports;
  std::vector<RunRecord> raw;
};

// Runs every configured algorithm on every configured instance. H1/H2/H3 and
// EXACT run once; metaheuristics run reps times with seeds base..base+reps-1.
// Every schedule is re-validated before it is counted; a validation failure
// aborts the whole matrix.
MatrixResult run_matrix(const BenchConfig& config);

std::string reports_csv(const std::vector<RunReport>& reports, TimeMode times);
std::string raw_csv(const std::vector<RunRecord>& records, TimeMode times);

struct AlgoRun {
  AggTree tree;
  FullSchedule schedule;
  int length = 0;
  double time_s = 0.0;
  std::string trace_csv;  // metaheuristics only
};

AlgoRun run_algorithm(std::shared_ptr<const Instance> inst, Algorithm algo,
                      std::uint64_t seed, const BenchConfig& knobs,
                      TimeMode times = TimeMode::wall);

// Uniform points in the unit square, retried until connected at distance d.
std::shared_ptr<const Instance> generate_instance(int n, double d, std::uint64_t seed,
                                                  int max_tries = 200);

// DOT digraph with coordinate-pinned vertices; arcs are labeled with their
// slot and arcs sharing a slot share a color. Refuses invalid schedules.
std::string export_dot(const AggTree& t, const FullSchedule& s);

std::string instance_id_for(const Instance& inst);

}  // namespace mlas
