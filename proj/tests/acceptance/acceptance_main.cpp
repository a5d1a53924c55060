// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 is reported as SKIP when no OR-Library file is
// available.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "helpers.hpp"
#include "mlas/bench.hpp"
#include "mlas/errors.hpp"
#include "mlas/exact.hpp"

using namespace mlas;
using namespace testutil;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Skip : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

// ---- shared oracles (from-scratch, independent of the incremental code) ----

int merge_ancestor(const AggTree& t, int a, int b) {
  std::unordered_set<int> on_a;
  for (int x = a; x != -1; x = t.parent(x)) on_a.insert(x);
  int x = b;
  while (!on_a.count(x)) x = t.parent(x);
  return x;
}

int branch_top(const AggTree& t, int x, int anc) {
  int cur = x;
  while (t.parent(cur) != anc) cur = t.parent(cur);
  return cur;
}

struct OracleResult {
  int effect = 0;
  bool probed_zero = false;
};

OracleResult oracle_reattach(const AggTree& t, int v, int u) {
  const int p = t.parent(v);
  if (u == p) return {0, false};
  const int a = merge_ancestor(t, p, u);
  if (p != a) {
    const int q = branch_top(t, p, a);
    if (naive_completion(t, q, p, v) == naive_completion(t, q, -1, -1)) return {0, true};
  }
  AggTree moved = t;
  moved.reattach(v, u);
  return {primary_schedule(t).makespan - primary_schedule(moved).makespan, false};
}

OracleResult oracle_inversion(const AggTree& t, int v, int u) {
  const int p = t.parent(v);
  const int g = t.parent(p);
  const int a = merge_ancestor(t, g, u);
  if (g != a) {
    const int q = branch_top(t, g, a);
    if (naive_completion(t, q, g, p) == naive_completion(t, q, -1, -1)) return {0, true};
  }
  AggTree moved = t;
  moved.invert_and_reattach(v, u);
  return {primary_schedule(t).makespan - primary_schedule(moved).makespan, false};
}

// ---- small utilities ----

std::shared_ptr<const Instance> sample_instance(int n_lo, int n_hi, double d_lo, double d_hi,
                                                Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int n = rng.uniform_int(n_lo, n_hi);
    const double d = d_lo + (d_hi - d_lo) * rng.uniform01();
    try {
      return generate_instance(n, d, rng.next(), 10);
    } catch (const ConnectivityError&) {
    }
  }
  throw Failure("could not sample a connected instance");
}

void require_valid(const std::shared_ptr<const Instance>& inst, const AggTree& t,
                   const FullSchedule& s, const std::string& who) {
  const auto violations = validate_schedule(*inst, t, s);
  if (!violations.empty())
    throw Failure(who + " emitted an invalid schedule: " + violations.front().to_string());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Failure("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "mlas_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

void run_cli(const std::string& args) {
  const char* cli = std::getenv("MLAS_CLI");
  if (!cli) throw Failure("MLAS_CLI is not set");
  const std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) throw Failure("command failed: " + cmd);
}

BenchConfig quick_meta_params() {
  BenchConfig knobs;
  knobs.gls.pop_size = 10;
  knobs.gls.offsp_size = 5;
  knobs.gls.fp_it_count = 15;
  knobs.gls.stall_limit = 2;
  knobs.vns.k_max = 6;
  knobs.vns.stall_limit = 2;
  return knobs;
}

// ---- criteria ----

// 1: every schedule any algorithm emits on random instances validates
void criterion_validity_fuzz() {
  Rng rng(20240801);
  const BenchConfig knobs = quick_meta_params();
  int instances = 0, schedules = 0;
  while (instances < 1000) {
    auto inst = sample_instance(5, 100, 0.15, 0.5, rng);
    ++instances;
    for (Algorithm algo : {Algorithm::H1, Algorithm::H2, Algorithm::H3}) {
      AlgoRun run = run_algorithm(inst, algo, 1, knobs);
      require_valid(inst, run.tree, run.schedule, to_string(algo));
      ++schedules;
    }
    if (instances % 20 == 0) {
      for (Algorithm algo : {Algorithm::GLS1, Algorithm::GLS2, Algorithm::VNS}) {
        AlgoRun run = run_algorithm(inst, algo, rng.next(), knobs);
        require_valid(inst, run.tree, run.schedule, to_string(algo));
        ++schedules;
      }
    }
    if (inst->size() <= 10) {
      ExactResult res = exact_min_latency(inst);
      require_valid(inst, res.tree, res.schedule, "EXACT");
      ++schedules;
    }
  }
  expect(schedules >= 3000, "too few schedules exercised");
}

// 2: primary_schedule equals the brute-force optimum on trees with n <= 8
void criterion_primary_oracle() {
  Rng rng(7);
  int trees = 0;
  while (trees < 500) {
    auto inst = sample_instance(4, 8, 0.4, 0.8, rng);
    AggTree t = random_tree(inst, rng);
    const int fast = primary_schedule(t).makespan;
    const int brute = exact_min_primary_latency(t);
    expect(fast == brute, "primary mismatch: fast " + std::to_string(fast) + " vs brute " +
                              std::to_string(brute));
    ++trees;
  }
}

// 3: incremental effects equal the from-scratch contract on n <= 50 trees
void criterion_incremental_effects() {
  Rng rng(11);
  int reattach_checked = 0, invert_checked = 0;
  while (reattach_checked < 1000 || invert_checked < 1000) {
    auto inst = sample_instance(10, 50, 0.25, 0.5, rng);
    AggTree t = random_tree(inst, rng);
    const PrimarySchedule ps = primary_schedule(t);
    for (const auto& [v, u] : inst->arcs()) {
      if (u != t.parent(v) && t.can_reattach(v, u) && reattach_checked < 1200) {
        const OracleResult oracle = oracle_reattach(t, v, u);
        const int effect = reattaching_effect(t, ps, v, u);
        expect(effect == oracle.effect,
               "reattaching_effect " + std::to_string(effect) + " != oracle " +
                   std::to_string(oracle.effect));
        if (oracle.probed_zero) {
          AggTree moved = t;
          moved.reattach(v, u);
          expect(primary_schedule(t).makespan - primary_schedule(moved).makespan <= 0,
                 "early exit hid an improving reattachment");
        }
        ++reattach_checked;
      }
      if (t.can_invert_and_reattach(v, u) && invert_checked < 1200) {
        const OracleResult oracle = oracle_inversion(t, v, u);
        const int effect = arc_inversion_effect(t, ps, v, u);
        expect(effect == oracle.effect,
               "arc_inversion_effect " + std::to_string(effect) + " != oracle " +
                   std::to_string(oracle.effect));
        if (oracle.probed_zero) {
          AggTree moved = t;
          moved.invert_and_reattach(v, u);
          expect(primary_schedule(t).makespan - primary_schedule(moved).makespan <= 0,
                 "early exit hid an improving inversion");
        }
        ++invert_checked;
      }
    }
  }
}

// 4: on 20 tiny instances each metaheuristic finds the optimum in >= 90% of
// 20 seeded runs and never exceeds optimum + 1
void criterion_small_scale_optimality() {
  BenchConfig knobs;  // full defaults
  std::vector<std::shared_ptr<const Instance>> instances;
  Rng rng(13);
  while (instances.size() < 20) instances.push_back(sample_instance(5, 8, 0.5, 0.7, rng));

  for (Algorithm algo : {Algorithm::GLS1, Algorithm::GLS2, Algorithm::VNS}) {
    int optimal = 0, total = 0;
    for (const auto& inst : instances) {
      const int best = exact_min_latency(inst).length;
      for (int run = 0; run < 20; ++run) {
        AlgoRun r = run_algorithm(inst, algo, 100 + static_cast<std::uint64_t>(run), knobs);
        require_valid(inst, r.tree, r.schedule, to_string(algo));
        expect(r.length <= best + 1, to_string(algo) + " exceeded optimum+1 (" +
                                         std::to_string(r.length) + " vs " +
                                         std::to_string(best) + ") on " +
                                         instance_id_for(*inst));
        if (r.length == best) ++optimal;
        ++total;
      }
    }
    const double pct = 100.0 * optimal / total;
    std::ostringstream os;
    os << to_string(algo) << " found the optimum in " << pct << "% of runs";
    expect(pct >= 90.0, os.str());
  }
}

// 5: metaheuristics never lose to their seeds
void criterion_seeded_dominance() {
  Rng rng(17);
  const BenchConfig knobs = quick_meta_params();
  for (int round = 0; round < 20; ++round) {
    auto inst = sample_instance(10, 60, 0.25, 0.5, rng);
    const int h1 = run_algorithm(inst, Algorithm::H1, 1, knobs).length;
    const int h2 = run_algorithm(inst, Algorithm::H2, 1, knobs).length;
    const int h3 = run_algorithm(inst, Algorithm::H3, 1, knobs).length;
    const int seed_best = std::min({h1, h2, h3});
    for (Algorithm algo : {Algorithm::GLS1, Algorithm::GLS2}) {
      const int len = run_algorithm(inst, algo, rng.next(), knobs).length;
      expect(len <= seed_best, to_string(algo) + " lost to a seed tree");
    }
    const int vns_len = run_algorithm(inst, Algorithm::VNS, rng.next(), knobs).length;
    expect(vns_len <= seed_best, "VNS lost to its starting tree");
  }
}

// 6: exact closed forms and exact <= every heuristic
void criterion_exact_sanity() {
  auto star = star_instance(5);
  expect(exact_min_latency(star).length == 5, "star optimum is not n");
  auto path = path_instance(6);
  expect(exact_min_latency(path).length == 5, "path optimum is not n");
  auto triangle = inst_of({{0.5, 0.5}, {0.56, 0.5}, {0.5, 0.56}}, 0.1);
  expect(exact_min_latency(triangle).length == 2, "triangle optimum is not 2");

  Rng rng(19);
  const BenchConfig knobs = quick_meta_params();
  for (int round = 0; round < 50; ++round) {
    auto inst = sample_instance(4, 10, 0.5, 0.8, rng);
    const int best = exact_min_latency(inst).length;
    for (Algorithm algo : {Algorithm::H1, Algorithm::H2, Algorithm::H3, Algorithm::GLS1,
                           Algorithm::GLS2, Algorithm::VNS}) {
      const int len = run_algorithm(inst, algo, 3, knobs).length;
      expect(len >= best, to_string(algo) + " beat the exact optimum");
    }
  }
}

// 7: CLI reruns are byte-identical (time columns zeroed where they exist)
void criterion_determinism() {
  const auto dir = scratch_dir();
  auto path = [&](const std::string& name) { return (dir / name).string(); };

  run_cli("gen --n 24 --d 0.4 --seed 9 --out " + path("a.csv"));
  run_cli("gen --n 24 --d 0.4 --seed 9 --out " + path("b.csv"));
  expect(read_file(path("a.csv")) == read_file(path("b.csv")), "gen outputs differ");

  const std::string solve_args =
      "solve --instance " + path("a.csv") + " --format csv --d 0.4 --algo GLS1 --seed 4"
      " --times zero --params pop_size=8 --params offsp_size=4 --params fp_it_count=10"
      " --params stall_limit=2";
  run_cli(solve_args + " --out " + path("s1.json") + " --dot " + path("s1.dot") + " --trace " +
          path("s1.csv"));
  run_cli(solve_args + " --out " + path("s2.json") + " --dot " + path("s2.dot") + " --trace " +
          path("s2.csv"));
  expect(read_file(path("s1.json")) == read_file(path("s2.json")), "schedule JSON differs");
  expect(read_file(path("s1.dot")) == read_file(path("s2.dot")), "DOT differs");
  expect(read_file(path("s1.csv")) == read_file(path("s2.csv")), "trace differs");

  run_cli("render --instance " + path("a.csv") + " --format csv --d 0.4 --algo H2 --out " +
          path("r1.dot"));
  run_cli("render --instance " + path("a.csv") + " --format csv --d 0.4 --algo H2 --out " +
          path("r2.dot"));
  expect(read_file(path("r1.dot")) == read_file(path("r2.dot")), "render outputs differ");

  {
    std::ofstream cfg(path("bench.cfg"));
    cfg << "seed = 3\nreps = 3\nalgorithms = H1,H2,H3,GLS2,VNS,EXACT\ntimes = zero\n"
        << "exact_limit = 10\ngenerate = n=9 d=0.5 seed=2\ngenerate = n=14 d=0.45 seed=5\n"
        << "param = pop_size=8\nparam = offsp_size=4\nparam = fp_it_count=10\n"
        << "param = stall_limit=2\nparam = k_max_vns=5\n";
  }
  run_cli("bench --config " + path("bench.cfg") + " --out " + path("m1.csv") + " --raw-out " +
          path("mr1.csv"));
  run_cli("bench --config " + path("bench.cfg") + " --out " + path("m2.csv") + " --raw-out " +
          path("mr2.csv"));
  expect(read_file(path("m1.csv")) == read_file(path("m2.csv")), "bench summaries differ");
  expect(read_file(path("mr1.csv")) == read_file(path("mr2.csv")), "bench raw rows differ");
}

// 8: one full-parameter VNS run on n=100, d=0.3 inside the time budget
void criterion_runtime() {
  auto inst = generate_instance(100, 0.3, 1);
  const auto start = std::chrono::steady_clock::now();
  VnsParams p;  // k_max = 30, stall_limit = 3
  p.seed = 1;
  VnsResult r = run_vns(inst, p);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require_valid(inst, r.tree, r.schedule, "VNS");
  std::ostringstream os;
  os << "VNS took " << secs << " s (limit 60)";
  expect(secs <= 60.0, os.str());
}

// 9: optional OR-Library check, n=10 d=0.5 cases 1..6 must reach length 5
void criterion_orlib() {
  std::filesystem::path file;
  if (const char* env = std::getenv("MLAS_ESTEIN10")) file = env;
  if (file.empty()) {
    if (const char* src = std::getenv("MLAS_SOURCE_DIR")) {
      const auto cand = std::filesystem::path(src) / "data" / "estein10.txt";
      if (std::filesystem::exists(cand)) file = cand;
    }
  }
  if (file.empty() || !std::filesystem::exists(file))
    throw Skip("no estein10 file found (set MLAS_ESTEIN10 or add data/estein10.txt)");

  for (int nr = 1; nr <= 6; ++nr) {
    PointSet ps = load_points_file(file.string(), PointFormat::orlib, nr);
    auto inst = make_instance(std::move(ps), 0.5);
    const int len = exact_min_latency(inst).length;
    expect(len == 5, "case " + std::to_string(nr) + " gave " + std::to_string(len) +
                         " instead of 5 (sink tie-break mismatch must be investigated)");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "validity fuzzing over random instances", criterion_validity_fuzz},
      {2, "primary schedule equals the brute-force optimum", criterion_primary_oracle},
      {3, "incremental effects equal from-scratch recomputation", criterion_incremental_effects},
      {4, "metaheuristics reach the optimum on small instances", criterion_small_scale_optimality},
      {5, "metaheuristics never lose to their seeds", criterion_seeded_dominance},
      {6, "exact solver sanity", criterion_exact_sanity},
      {7, "seeded reruns are byte-identical", criterion_determinism},
      {8, "desk-scale runtime for VNS on n=100", criterion_runtime},
      {9, "OR-Library estein10 optima", criterion_orlib},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    try {
      c.run();
      std::cout << "[PASS] criterion " << c.id << ": " << c.name << "\n";
    } catch (const Skip& s) {
      std::cout << "[SKIP] criterion " << c.id << ": " << c.name<< ": " << s.what() << "\n";
    } catch (const std::exception& e) {
      std::cout << "[FAIL] criterion " << c.id << ": " << c.name<< ": " << e.what() << "\n";
      ++failures;
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
